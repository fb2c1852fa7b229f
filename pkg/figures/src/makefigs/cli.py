"""makefigs: batch figure regeneration from a JSON spec.

Usage: makefigs --spec figures.json --out outdir

The spec file holds {"figures": [ {...}, ... ]}; each entry is a FigureSpec
dict whose output path is taken relative to --out.  Exits 0 when every
figure renders, 1 on usage/spec errors, 2 when an input artifact is missing
or malformed (the offending path is printed).
"""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys

from .render import FigureInputError, FigureSpec, make_figure


def expand_inputs(patterns, base: str) -> tuple:
    paths = []
    for pattern in patterns:
        full = pattern if os.path.isabs(pattern) else os.path.join(base, pattern)
        hits = sorted(glob.glob(full))
        paths.extend(hits if hits else [full])
    return tuple(paths)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="makefigs")
    parser.add_argument("--spec", required=True, help="JSON figure spec")
    parser.add_argument("--out", required=True, help="output directory")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0

    try:
        with open(args.spec) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read spec {args.spec}: {exc}")
        return 1
    figures = doc.get("figures")
    if not isinstance(figures, list) or not figures:
        print("error: spec must contain a non-empty 'figures' list")
        return 1

    base = os.path.dirname(os.path.abspath(args.spec))
    os.makedirs(args.out, exist_ok=True)
    for entry in figures:
        try:
            spec = FigureSpec.from_dict(entry)
            spec = FigureSpec(
                kind=spec.kind,
                inputs=expand_inputs(spec.inputs, base),
                output=os.path.join(args.out, spec.output),
                alphas=spec.alphas,
                labels=spec.labels,
                colors=spec.colors,
                xlim=spec.xlim,
                title=spec.title,
            )
            path = make_figure(spec)
        except FigureInputError as exc:
            print(f"error: {exc}")
            return 2
        except TypeError as exc:
            print(f"error: bad figure entry {entry}: {exc}")
            return 1
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
