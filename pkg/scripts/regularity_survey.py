"""Count how often Jordan-Lie inner ideals are regular, before and after reduction.

    python scripts/regularity_survey.py --count 50 --max-dim 12
"""

from __future__ import annotations

import argparse
import random
from collections import Counter

from jordanlie.corpus import RandomAlgebraParams, example_nr, random_algebra
from jordanlie.inner_ideal import InnerIdealCandidate, is_jordan_lie, is_regular
from jordanlie.invariants import jordan_lie_candidates
from jordanlie.reduction import bar_minimal_reduce
from jordanlie.scalars import FieldSpec


def survey(count: int, max_dim: int, seed: int, field: FieldSpec) -> tuple:
    regular: Counter = Counter()
    total: Counter = Counter()
    reduced_regular = 0
    master = random.Random(seed)
    params = RandomAlgebraParams(max_dim=max_dim, field=field)
    for _ in range(count):
        s = master.randrange(1 << 31)
        A = random_algebra(s, params)
        for kind, cand in jordan_lie_candidates(A, random.Random(s), pair_budget=20):
            total[kind] += 1
            regular[kind] += is_regular(cand)
            reduced_regular += is_regular(cand.with_subspace(bar_minimal_reduce(cand).B_prime))
    return total, regular, reduced_regular


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--max-dim", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field", default="Q")
    args = ap.parse_args()

    total, regular, reduced = survey(args.count, args.max_dim, args.seed, FieldSpec.parse(args.field))
    print(f"{'kind':<12}{'candidates':>12}{'regular':>10}")
    for kind in sorted(total):
        print(f"{kind:<12}{total[kind]:>12}{regular[kind]:>10}")
    print(f"reduced subideals regular: {reduced} of {sum(total.values())}")

    nr = example_nr(FieldSpec.parse(args.field))
    cand = InnerIdealCandidate.make(nr.algebra, nr.generators, k=0)
    print(f"non-regular example: jordan_lie={is_jordan_lie(cand)} regular={is_regular(cand)}")


if __name__ == "__main__":
    main()
