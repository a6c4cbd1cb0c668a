#!/usr/bin/env python3
"""Generate a batch of random scenario files for experimentation.

Usage: python3 scripts/make_scenarios.py OUTDIR [--count N] [--tasks M] [--sites S]
"""

import argparse
import json
from pathlib import Path

from distplan.generate import generate_document


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", type=Path)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--tasks", type=int, default=8)
    parser.add_argument("--sites", type=int, default=3)
    parser.add_argument("--shape", choices=["chain", "random-tree"],
                        default="random-tree")
    parser.add_argument("--skills", action="store_true")
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for seed in range(args.count):
        doc = generate_document(args.tasks, args.sites, seed, shape=args.shape,
                                with_skills=args.skills)
        path = args.outdir / f"scenario_{seed:03d}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
