#!/usr/bin/env python3
"""Writes 2-Selmer ranks of quadratic twists computed by PARI/GP (via cypari)
as datastore records: label : d : rank.

usage: reference_ranks.py CURVES_FILE MAX_ABS_D [LABEL ...] > out.txt
       reference_ranks.py CURVES_FILE --fill < records.txt > out.txt
In --fill mode each input line is 'label : d : ?' (the record printed by a
MissingIngestedRank error) and is answered with the computed rank.
"""
import sys

from cypari import pari


def squarefree(n):
    return n != 0 and pari.issquarefree(n)


def read_curves(path):
    curves = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, coeffs = (s.strip() for s in line.split(":"))
            curves[label] = [int(c) for c in coeffs.split()]
    return curves


def selmer2_rank(ainvs, d):
    E = pari.ellinit(ainvs)
    disc = d if d % 4 == 1 else 4 * d
    Ed = pari.ellinit(pari.elltwist(E, disc)) if d != 1 else E
    return len(pari.ell2cover(Ed))


def main():
    curves = read_curves(sys.argv[1])
    if sys.argv[2] == "--fill":
        for line in sys.stdin:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, d, _ = (s.strip() for s in line.split(":"))
            print(f"{label} : {d} : {selmer2_rank(curves[label], int(d))}")
        return
    bound = int(sys.argv[2])
    labels = sys.argv[3:] or sorted(curves)
    for label in labels:
        for d in range(-bound, bound + 1):
            if squarefree(d):
                print(f"{label} : {d} : {selmer2_rank(curves[label], d)}")


if __name__ == "__main__":
    main()
