"""Rebuild the 96-statement evaluation fixtures from the published tables.

Two steps, both independent of the package under test:

1. Enumerate every 3x3 confusion matrix whose rows hold 32 statements per
   author class and keep those whose rounded precision/recall values and match
   count agree with the Author-SA block. Exactly one matrix survives.
2. Solve a small integer program for per-statement (author, human, SA) label
   triples that realise that matrix, the Author-Human and Human-SA diagonals
   and column totals, and the 46-statement three-way core.

Run ``python scripts/derive_table_fixtures.py --write`` to refresh
``tests/fixtures/three_raters.csv``.
"""

from __future__ import annotations

import argparse
import csv
import itertools
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

CLASSES = ("positive", "neutral", "negative")
PER_CLASS = 32
N = 96

# Author-SA rows of the published P/R/F1 table, in CLASSES order.
AUTHOR_SA = {
    "precision": (0.850, 0.500, 1.00),
    "recall": (0.531, 0.969, 0.438),
    "f1": (0.654, 0.660, 0.609),
}
AUTHOR_SA_MATCHES = 62

# Diagonals and predicted-class totals implied by the Author-Human and
# Human-SA recall/precision rows (recall * true total, tp / precision).
AUTHOR_HUMAN_DIAG = (10, 29, 21)
HUMAN_TOTALS = (13, 55, 28)
HUMAN_SA_DIAG = (9, 43, 9)
CORE = 46


def _close(value: float, published: float) -> bool:
    # Published values carry 3 decimals (precision 1.00 carries 2).
    return abs(value - published) <= 0.0005 + 1e-12


def solve_author_sa() -> list[np.ndarray]:
    rows = [
        (a, b, PER_CLASS - a - b)
        for a in range(PER_CLASS + 1)
        for b in range(PER_CLASS + 1 - a)
    ]
    # Recall pins each diagonal cell, so filter rows first.
    by_class = []
    for k in range(3):
        keep = [r for r in rows if _close(r[k] / PER_CLASS, AUTHOR_SA["recall"][k])]
        by_class.append(keep)
    solutions = []
    for combo in itertools.product(*by_class):
        cm = np.array(combo)
        if np.trace(cm) != AUTHOR_SA_MATCHES:
            continue
        col = cm.sum(axis=0)
        if (col == 0).any():
            continue
        prec = np.diag(cm) / col
        rec = np.diag(cm) / cm.sum(axis=1)
        f1 = 2 * prec * rec / (prec + rec)
        if all(_close(prec[k], AUTHOR_SA["precision"][k]) for k in range(3)) and all(
            _close(f1[k], AUTHOR_SA["f1"][k]) for k in range(3)
        ):
            solutions.append(cm)
    return solutions


def solve_triples(author_sa: np.ndarray) -> dict[tuple[int, int, int], int]:
    idx = {t: i for i, t in enumerate(itertools.product(range(3), repeat=3))}
    rows, lo, hi = [], [], []

    def eq(cells, value):
        row = np.zeros(len(idx))
        for c in cells:
            row[idx[c]] = 1
        rows.append(row)
        lo.append(value)
        hi.append(value)

    for a in range(3):
        for s in range(3):
            eq([(a, h, s) for h in range(3)], author_sa[a, s])
    for k in range(3):
        eq([(k, k, s) for s in range(3)], AUTHOR_HUMAN_DIAG[k])
        eq([(a, k, s) for a in range(3) for s in range(3)], HUMAN_TOTALS[k])
        eq([(a, k, k) for a in range(3)], HUMAN_SA_DIAG[k])
    eq([(k, k, k) for k in range(3)], CORE)

    res = milp(
        c=np.zeros(len(idx)),
        constraints=LinearConstraint(np.array(rows), lo, hi),
        integrality=np.ones(len(idx)),
        bounds=Bounds(0, N),
    )
    if not res.success:
        raise SystemExit(f"no three-rater fixture exists: {res.message}")
    x = np.rint(res.x).astype(int)
    return {t: int(x[i]) for t, i in idx.items() if x[i]}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--write", action="store_true")
    args = parser.parse_args()

    solutions = solve_author_sa()
    print(f"Author-SA candidates: {len(solutions)}")
    for cm in solutions:
        print(cm)
    if len(solutions) != 1:
        raise SystemExit("Author-SA matrix is not unique")

    triples = solve_triples(solutions[0])
    for (a, h, s), count in sorted(triples.items()):
        print(f"author={CLASSES[a]:8} human={CLASSES[h]:8} sa={CLASSES[s]:8} x{count}")

    if args.write:
        out = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "three_raters.csv"
        with out.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["author", "human", "sa"])
            for (a, h, s), count in sorted(triples.items()):
                for _ in range(count):
                    writer.writerow([CLASSES[a], CLASSES[h], CLASSES[s]])
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
