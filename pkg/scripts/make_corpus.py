#!/usr/bin/env python3
"""Write the synthetic planted corpus to a directory of article files.

The layout plants two query topics at three evidence strengths plus a
references-only distractor block, so the directory is ready for
`fuzzyrank index` and eyeball checks.
"""
import argparse
from pathlib import Path

from fuzzyrank.synth import write_planted_corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("directory", type=Path, help="output directory for article files")
    ap.add_argument("--seed", type=int, default=2026, help="filler text seed")
    args = ap.parse_args()

    args.directory.mkdir(parents=True, exist_ok=True)
    paths = write_planted_corpus(args.directory, seed=args.seed)
    print(f"wrote {len(paths)} articles to {args.directory}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
