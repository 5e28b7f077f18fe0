#!/usr/bin/env python3
"""Draw the hull chain of a sublattice as an SVG, plus the chain as JSON."""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from eisenlab.cli import emit_hull_svg
from eisenlab.hull import hull_chain


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sub-level", type=int, default=5)
    parser.add_argument("--shear", type=int, default=3)
    parser.add_argument("--out-dir", type=Path, default=Path("."))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    chain = hull_chain(args.sub_level, args.shear)
    stem = f"hull_{chain.level}_{chain.shear}"
    svg_path = args.out_dir / f"{stem}.svg"
    json_path = args.out_dir / f"{stem}.json"
    emit_hull_svg(chain, str(svg_path))
    json_path.write_text(
        json.dumps([[x, y] for x, y in chain.vectors]) + "\n",
        encoding="utf-8")
    print("chain: [" + ",".join(f"({x},{y})" for x, y in chain.vectors) + "]")
    print(f"figure -> {svg_path}")
    print(f"chain  -> {json_path}")


if __name__ == "__main__":
    main()
