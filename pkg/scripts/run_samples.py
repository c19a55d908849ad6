#!/usr/bin/env python3
"""Print full traces for a handful of sample queries.

Usage::

    python3 scripts/run_samples.py                # the documented sample set
    python3 scripts/run_samples.py "[phon:kazma]" # or any queries you like
"""

import argparse

from turklex.cli import _render_full
from turklex.engine import LexiconEngine
from turklex.featstruct import parse_fs_text, render_fs

SAMPLES = [
    "[phon:atIm]",
    "[phon:memnunum, cat:[maj:verb]]",
    "[phon:ekim, morph:[poss:'1sg']]",
    "[phon:ekimde, morph:[poss:none], sem:[temporal:+]]",
    "[phon:kazma]",
    "[phon:akIllIca]",
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("queries", nargs="*", default=SAMPLES,
                        help="query feature structures (default: sample set)")
    parser.add_argument("--style", choices=["compact", "indented"],
                        default="indented", help="feature-structure layout")
    args = parser.parse_args()

    engine = LexiconEngine.from_bundled_data()
    for text in args.queries:
        print("=" * 72)
        print(f"Query: {text}")
        print("=" * 72)
        trace = engine.run(parse_fs_text(text))
        for line in _render_full(trace, args.style):
            print(line)
        print(f"Number of feature structures: {len(trace.results)}")
        for i, fs in enumerate(trace.results, 1):
            if args.style == "indented":
                print(f"{i}:")
                print(render_fs(fs, style="indented"))
            else:
                print(f"{i}: {render_fs(fs)}")
        print()


if __name__ == "__main__":
    main()
