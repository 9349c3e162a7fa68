"""Write every built-in algebra as a file, plus the idempotent-pair poset for the small ones.

    python scripts/export_corpus.py --out corpus/
"""

from __future__ import annotations

import argparse
from pathlib import Path

from jordanlie.cli import named_algebras, poset_dot
from jordanlie.fileformat import emit_algebra
from jordanlie.scalars import FieldSpec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("corpus"))
    ap.add_argument("--field", default="Q")
    ap.add_argument("--poset-max-dim", type=int, default=9)
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for name, entry in sorted(named_algebras(FieldSpec.parse(args.field)).items()):
        A, subs = entry if isinstance(entry, tuple) else (entry, {})
        stem = name.replace(" ", "_")
        (args.out / f"{stem}.json").write_text(emit_algebra(A, subs, with_levi=name != "example-nr"))
        if A.dim <= args.poset_max_dim:
            (args.out / f"{stem}.dot").write_text(poset_dot(A, budget=400))
        print(f"{name}: dim {A.dim}")


if __name__ == "__main__":
    main()
