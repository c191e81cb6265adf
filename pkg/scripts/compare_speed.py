#!/usr/bin/env python3
"""Time the recursive segmenter against the exhaustive Otsu baseline.

For each input image, prints one row per threshold count with the median
pipeline time (histogram + cuts + quantization), the PSNR achieved, and the
wall clock of the exhaustive search producing the same number of thresholds
(where that count is 3 or fewer).

    python scripts/compare_speed.py fixtures/*.pgm
"""

import argparse
from pathlib import Path

from mvthresh.image import compute_histogram, read_pgm
from mvthresh.otsu import otsu_multilevel_exhaustive
from mvthresh.quality import median_elapsed_ms, psnr, timed
from mvthresh.segmentation import SegmentationParams, segment_image


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("images", nargs="+", help="PGM files")
    parser.add_argument("--levels", default="3,5,7,9")
    parser.add_argument("--runs", type=int, default=20)
    args = parser.parse_args()

    levels = [int(n) for n in args.levels.split(",")]
    header = f"{'image':24s} {'n':>3s} {'recursive ms':>13s} {'psnr dB':>8s} {'exhaustive ms':>14s}"
    print(header)
    print("-" * len(header))
    for entry in args.images:
        path = Path(entry)
        image = read_pgm(path.read_bytes())
        hist = compute_histogram(image)
        for n in levels:
            params = SegmentationParams(n=n)
            (result, quantized), rec_ms = median_elapsed_ms(
                segment_image, image, params, runs=args.runs
            )
            db = psnr(image, quantized)
            if n <= 3:
                _, otsu_ms = timed(otsu_multilevel_exhaustive, hist, n)
                otsu_cell = f"{otsu_ms:14.1f}"
            else:
                otsu_cell = f"{'-':>14s}"
            db_cell = "inf" if db == float("inf") else f"{db:8.2f}"
            print(f"{path.name:24s} {n:3d} {rec_ms:13.3f} {db_cell:>8s} {otsu_cell}")


if __name__ == "__main__":
    main()
