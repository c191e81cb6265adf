"""Independent brute-force reference implementations used by the tests.

Everything here is written with plain Python loops, Fractions, and exact
integer arithmetic — no shared code with the library under test. Where a
reference quantity is irrational (standard deviations), the float conversion
happens on an exactly-computed rational, so the values are deterministic.
"""

import math
from fractions import Fraction


def pixel_tally(pixels):
    """Per-intensity counts by scanning pixels one at a time."""
    bins = [0] * 256
    for p in pixels:
        bins[int(p)] += 1
    return bins


def moments(bins, lo, hi):
    """(count, sum, sum of squares) over bins[lo..hi], exact integers."""
    s0 = s1 = s2 = 0
    for v in range(lo, hi + 1):
        c = int(bins[v])
        s0 += c
        s1 += v * c
        s2 += v * v * c
    return s0, s1, s2


def mean_std(bins, lo, hi):
    """Population mean/std from exact rational moments; None when empty."""
    s0, s1, s2 = moments(bins, lo, hi)
    if s0 == 0:
        return None, None
    mean = s1 / s0
    var = Fraction(s0 * s2 - s1 * s1, s0 * s0)
    return mean, math.sqrt(var)


def rhu_int(numer, denom):
    """Round-half-up of the exact rational numer/denom."""
    return math.floor(Fraction(numer, denom) + Fraction(1, 2))


def rhu_float(x):
    return math.floor(x + 0.5)


def weighted_mean_int(bins, lo, hi):
    s0, s1, _ = moments(bins, lo, hi)
    if s0 == 0:
        return None
    return rhu_int(s1, s0)


def clamp(x, lo, hi):
    return max(lo, min(hi, x))


def reference_segment(bins, n, schedule=((1.0, 1.0),), mode="weighted-mean"):
    """Step-by-step reference of the recursive mean/variance segmentation.

    Returns (thresholds, classes) with classes as (lo, hi, value) triples.
    """

    def class_value(lo, hi):
        if mode == "midpoint":
            return (lo + hi) // 2
        wm = weighted_mean_int(bins, lo, hi)
        return (lo + hi) // 2 if wm is None else wm

    a, b = 0, 255
    lower, upper, t_low, t_high = [], [], [], []
    for step in range((n - 1) // 2):
        k1, k2 = schedule[min(step, len(schedule) - 1)]
        mean, std = mean_std(bins, a, b)
        if mean is None:
            break
        t1 = clamp(rhu_float(mean - k1 * std), a, b)
        t2 = clamp(rhu_float(mean + k2 * std), a, b)
        if t2 - t1 < 2:
            break
        lower.append((a, t1, class_value(a, t1)))
        upper.append((t2, b, class_value(t2, b)))
        t_low.append(t1)
        t_high.append(t2)
        a, b = t1 + 1, t2 - 1

    split = weighted_mean_int(bins, a, b)
    if split is None:
        split = (a + b) // 2
    if split >= b or moments(bins, split + 1, b)[0] == 0:
        middle_classes = [(a, b, class_value(a, b))]
    else:
        middle_classes = [
            (a, split, class_value(a, split)),
            (split + 1, b, class_value(split + 1, b)),
        ]
    thresholds = t_low + [split] + list(reversed(t_high))
    classes = lower + middle_classes + list(reversed(upper))
    return thresholds, classes


def bcv_fraction(bins, thresholds):
    """Between-class variance as an exact Fraction, straight from w*(mu-muT)^2."""
    total = sum(int(c) for c in bins)
    if total == 0:
        return Fraction(0)
    grand = sum(v * int(bins[v]) for v in range(256))
    mu_total = Fraction(grand, total)
    bounds = [-1] + list(thresholds) + [255]
    acc = Fraction(0)
    for lo, hi in zip(bounds, bounds[1:]):
        s0, s1, _ = moments(bins, lo + 1, hi)
        if s0 == 0:
            continue
        acc += Fraction(s0, total) * (Fraction(s1, s0) - mu_total) ** 2
    return acc


def _bcv_cmp_key(count_acc, sum_acc, thresholds, total, grand):
    """(numerator, denominator) of N^3 * BCV as exact integers.

    Derived by clearing denominators in sum(w_c * (mu_c - mu_T)^2); only good
    for comparing candidates on one histogram. ``count_acc``/``sum_acc`` are
    running totals with count_acc[i] covering bins[0..i-1].
    """
    bounds = [0] + [t + 1 for t in thresholds] + [256]
    num, den = 0, 1
    for lo, hi in zip(bounds, bounds[1:]):
        s0 = count_acc[hi] - count_acc[lo]
        if s0 == 0:
            continue
        s1 = sum_acc[hi] - sum_acc[lo]
        term_num = (total * s1 - grand * s0) ** 2
        num = num * s0 + term_num * den
        den = den * s0
    return num, den


def brute_force_otsu(bins, k):
    """Lexicographically smallest maximizer over all ascending k-tuples."""
    count_acc = [0] * 257
    sum_acc = [0] * 257
    for v in range(256):
        count_acc[v + 1] = count_acc[v] + int(bins[v])
        sum_acc[v + 1] = sum_acc[v] + v * int(bins[v])
    total, grand = count_acc[256], sum_acc[256]

    def tuples(k):
        if k == 1:
            for t in range(255):
                yield (t,)
        elif k == 2:
            for t1 in range(254):
                for t2 in range(t1 + 1, 255):
                    yield (t1, t2)
        else:
            raise ValueError("reference search only handles k <= 2")

    best_key = None
    best = None
    for ts in tuples(k):
        num, den = _bcv_cmp_key(count_acc, sum_acc, ts, total, grand)
        if best_key is None or num * best_key[1] > best_key[0] * den:
            best_key = (num, den)
            best = ts
    return best
