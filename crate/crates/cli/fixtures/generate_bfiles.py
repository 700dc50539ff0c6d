#!/usr/bin/env python3
"""Regenerates the bundled b-files from each sequence's defining recurrence.

Each entry is (A-number, first OEIS index, a(first), a(first+1), p, q) for
a(n) = p*a(n-1) + q*a(n-2). Run from this directory; writes bfiles/bNNNNNN.txt.
"""
import pathlib

TERMS = 40

SEQUENCES = [
    # F column
    ("A000045", 0, 0, 1, 1, 1),
    ("A000129", 0, 0, 1, 2, 1),
    ("A006190", 0, 0, 1, 3, 1),
    ("A001076", 0, 0, 1, 4, 1),
    ("A052918", 0, 1, 5, 5, 1),
    ("A005668", 0, 0, 1, 6, 1),
    ("A054413", 0, 1, 7, 7, 1),
    ("A041025", 0, 1, 8, 8, 1),
    ("A099371", 0, 0, 1, 9, 1),
    ("A001045", 0, 0, 1, 1, 2),
    ("A006130", 0, 0, 1, 1, 3),
    ("A002605", 0, 0, 1, 2, 2),
    ("A015518", 0, 0, 1, 2, 3),
    ("A007482", 0, 1, 3, 3, 2),
    ("A030195", 0, 0, 1, 3, 3),
    # L column
    ("A000032", 0, 2, 1, 1, 1),
    ("A002203", 0, 2, 2, 2, 1),
    ("A006497", 0, 2, 3, 3, 1),
    ("A014448", 0, 2, 4, 4, 1),
    ("A087130", 0, 2, 5, 5, 1),
    ("A085447", 0, 2, 6, 6, 1),
    ("A086902", 0, 2, 7, 7, 1),
    ("A087798", 0, 2, 9, 9, 1),
    ("A014551", 0, 2, 1, 1, 2),
    ("A075118", 0, 2, 1, 1, 3),
    ("A080040", 0, 2, 2, 2, 2),
    ("A102345", 0, 2, 2, 2, 3),
    ("A206776", 0, 2, 3, 3, 2),
    ("A172012", 0, 2, 3, 3, 3),
    # sequences used in the multisection examples
    ("A010892", 0, 1, 1, 1, -1),
    ("A002249", 0, 2, 1, 1, -2),
]


def terms(first, x0, x1, p, q):
    out = [x0, x1]
    while len(out) < TERMS:
        out.append(p * out[-1] + q * out[-2])
    return [(first + i, v) for i, v in enumerate(out)]


def main():
    here = pathlib.Path(__file__).resolve().parent / "bfiles"
    here.mkdir(exist_ok=True)
    for aid, first, x0, x1, p, q in SEQUENCES:
        lines = [f"# {aid}: a(n) = {p}*a(n-1) + {q}*a(n-2), a({first}) = {x0}, a({first + 1}) = {x1}"]
        lines += [f"{n} {v}" for n, v in terms(first, x0, x1, p, q)]
        (here / f"b{aid[1:]}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
