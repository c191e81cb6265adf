"""Command-line front end: segment images, sweep PSNR vs n, Otsu, benchmark.

Exit codes: 0 success, 1 I/O failure, 2 usage or validation failure.
All output is deterministic for identical inputs; only timings vary.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .image import GrayImage, PgmError, compute_histogram, read_pgm, write_pgm
from .otsu import otsu_multilevel_exhaustive
from .quality import QualityReport, median_elapsed_ms, mse, psnr, timed
from .segmentation import (
    Replacement,
    SegmentationParams,
    auto_select_n,
    segment_image,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2

BENCH_RUNS = 20


class UsageError(Exception):
    """Flag combination or value the CLI rejects with exit code 2."""


@dataclass(frozen=True)
class RunReport:
    """Machine-readable record of one segmentation run."""

    input_path: str
    params: SegmentationParams
    thresholds: tuple[int, ...]
    classes: tuple[tuple[int, int, int], ...]  # (lo, hi, replacement)
    effective_n: int
    quality: QualityReport

    def to_dict(self) -> dict:
        return {
            "input_path": self.input_path,
            "params": self.params.to_dict(),
            "thresholds": list(self.thresholds),
            "classes": [
                {"lo": lo, "hi": hi, "value": value} for lo, hi, value in self.classes
            ],
            "effective_n": self.effective_n,
            "quality": self.quality.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "RunReport":
        return cls(
            input_path=payload["input_path"],
            params=SegmentationParams.from_dict(payload["params"]),
            thresholds=tuple(int(t) for t in payload["thresholds"]),
            classes=tuple(
                (int(c["lo"]), int(c["hi"]), int(c["value"])) for c in payload["classes"]
            ),
            effective_n=int(payload["effective_n"]),
            quality=QualityReport.from_dict(payload["quality"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def _parse_kappa_schedule(text: str) -> tuple[tuple[float, float], ...]:
    """Parse ``k1:k2,k1:k2,...`` into per-pass kappa pairs."""
    pairs = []
    for chunk in text.split(","):
        parts = chunk.split(":")
        if len(parts) != 2:
            raise UsageError(f"bad kappa schedule entry {chunk!r}, expected k1:k2")
        try:
            k1, k2 = float(parts[0]), float(parts[1])
        except ValueError:
            raise UsageError(f"bad kappa schedule entry {chunk!r}, expected numbers") from None
        if not (math.isfinite(k1) and k1 > 0 and math.isfinite(k2) and k2 > 0):
            raise UsageError("kappa values must be positive and finite")
        pairs.append((k1, k2))
    return tuple(pairs)


def _segmentation_params(args) -> SegmentationParams:
    if args.levels % 2 == 0 or args.levels < 3:
        raise UsageError(
            f"--levels must be an odd integer >= 3 (pairs of cuts plus one middle "
            f"threshold), got {args.levels}"
        )
    if args.kappa_schedule is not None:
        schedule = _parse_kappa_schedule(args.kappa_schedule)
    else:
        schedule = ((args.kappa, args.kappa),)
    try:
        return SegmentationParams(
            n=args.levels,
            kappa_schedule=schedule,
            replacement=Replacement(args.replacement),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_image(path: str) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def _print_thresholds(thresholds) -> None:
    print("thresholds:", ", ".join(str(t) for t in thresholds))


def cmd_segment(args) -> int:
    params = _segmentation_params(args)
    image = _load_image(args.input)
    (result, quantized), elapsed = timed(segment_image, image, params)
    Path(args.output).write_bytes(write_pgm(quantized))

    quality = QualityReport(
        mse=mse(image, quantized),
        psnr_db=psnr(image, quantized),
        elapsed_ms=elapsed,
        params=params,
    )
    report = RunReport(
        input_path=args.input,
        params=params,
        thresholds=result.thresholds,
        classes=tuple((iv.lo, iv.hi, value) for iv, value in result.classes),
        effective_n=result.effective_n,
        quality=quality,
    )
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")

    _print_thresholds(result.thresholds)
    print(f"effective_n: {result.effective_n}")
    value = quality.psnr_db
    print(f"psnr_db: {'inf' if math.isinf(value) else f'{value:.2f}'}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.max_levels % 2 == 0 or args.max_levels < 3:
        raise UsageError(f"--max-levels must be an odd integer >= 3, got {args.max_levels}")
    if not math.isfinite(args.epsilon) or args.epsilon <= 0:
        raise UsageError("--epsilon must be positive and finite")
    image = _load_image(args.input)
    chosen, sweep = auto_select_n(
        image, SegmentationParams(n=3), epsilon=args.epsilon, n_max=args.max_levels
    )
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "psnr_db", "elapsed_ms"])
        for point in sweep:
            writer.writerow([point.n, _csv_db(point.psnr_db), f"{point.elapsed_ms:.3f}"])
    print(f"chosen_n: {chosen}")
    return EXIT_OK


def _csv_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def cmd_otsu(args) -> int:
    if not 2 <= args.classes <= 4:
        raise UsageError(f"--classes must be in [2, 4], got {args.classes}")
    image = _load_image(args.input)
    hist = compute_histogram(image)
    result, elapsed = timed(otsu_multilevel_exhaustive, hist, args.classes - 1)
    _print_thresholds(result.thresholds)
    print(f"criterion: {result.criterion:.4f}")
    print(f"elapsed_ms: {elapsed:.3f}")
    if args.report:
        payload = {
            "input_path": args.input,
            "classes": args.classes,
            "thresholds": list(result.thresholds),
            "criterion": result.criterion,
            "elapsed_ms": elapsed,
        }
        Path(args.report).write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return EXIT_OK


def _bench_inputs(entries) -> list[Path]:
    paths: list[Path] = []
    for entry in entries:
        p = Path(entry)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.pgm")))
        else:
            paths.append(p)
    paths = sorted(set(paths))
    if not paths:
        raise UsageError("no input images to benchmark")
    return paths


def _parse_levels_list(text: str) -> list[int]:
    try:
        levels = [int(chunk) for chunk in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --levels list {text!r}") from None
    if not levels or any(n % 2 == 0 or n < 3 for n in levels):
        raise UsageError("every benchmark level must be an odd integer >= 3")
    return sorted(set(levels))  # rows come out ordered by path, then n


def cmd_bench(args) -> int:
    levels = _parse_levels_list(args.levels)
    paths = _bench_inputs(args.input)
    rows = []
    for path in paths:
        image = _load_image(str(path))
        for n in levels:
            params = SegmentationParams(n=n, kappa_schedule=((args.kappa, args.kappa),))
            (result, quantized), elapsed = median_elapsed_ms(
                segment_image, image, params, runs=BENCH_RUNS
            )
            value = psnr(image, quantized)
            rows.append(
                {
                    "image": str(path),
                    "n": n,
                    "thresholds": " ".join(str(t) for t in result.thresholds),
                    "elapsed_ms": f"{elapsed:.3f}",
                    "psnr_db": _csv_db(value),
                }
            )
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["image", "n", "thresholds", "elapsed_ms", "psnr_db"])
        writer.writeheader()
        writer.writerows(rows)
    for row in rows:
        print(f"{row['image']} n={row['n']} {row['elapsed_ms']} ms psnr={row['psnr_db']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvthresh",
        description="Multilevel grayscale thresholding via recursive mean/variance splits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="segment one image and write the quantized PGM")
    seg.add_argument("--input", required=True)
    seg.add_argument("--levels", type=int, required=True, help="odd number of thresholds")
    kappa_group = seg.add_mutually_exclusive_group()
    kappa_group.add_argument("--kappa", type=float, default=1.0)
    kappa_group.add_argument(
        "--kappa-schedule", default=None, help="per-pass pairs k1:k2,k1:k2,..."
    )
    seg.add_argument(
        "--replacement",
        choices=[mode.value for mode in Replacement],
        default=Replacement.WEIGHTED_MEAN.value,
    )
    seg.add_argument("--output", required=True)
    seg.add_argument("--report", default=None)
    seg.set_defaults(func=cmd_segment)

    sweep = sub.add_parser("sweep", help="PSNR vs n sweep with automatic n selection")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--max-levels", type=int, required=True)
    sweep.add_argument("--epsilon", type=float, required=True, help="saturation gain in dB")
    sweep.add_argument("--csv", required=True)
    sweep.set_defaults(func=cmd_sweep)

    otsu = sub.add_parser("otsu", help="exhaustive Otsu baseline")
    otsu.add_argument("--input", required=True)
    otsu.add_argument("--classes", type=int, required=True, help="class count in [2, 4]")
    otsu.add_argument("--report", default=None)
    otsu.set_defaults(func=cmd_otsu)

    bench = sub.add_parser("bench", help="median-of-20 timing table over a corpus")
    bench.add_argument("--input", nargs="+", required=True, help="PGM files or directories")
    bench.add_argument("--levels", default="3,5,7,9")
    bench.add_argument("--kappa", type=float, default=1.0)
    bench.add_argument("--csv", required=True)
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PgmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    raise SystemExit(main())
