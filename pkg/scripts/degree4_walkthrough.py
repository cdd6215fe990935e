#!/usr/bin/env python3
"""Walk through the degree-4 computation step by step.

Prints every object the pipeline produces at the first interesting
degree: the two defining identities, the expansion matrix with its rank
and kernel, a lattice-reduced kernel basis, the kernel character and its
irreducible multiplicities, the full per-partition table, and the block
matrix of the top partition together with its reduced column form.

Everything here is exact rational arithmetic and runs in seconds.
"""

import numpy as np

from prejordan.expansion import expansion_matrix, xblock_matrix
from prejordan.linalg import hermite_with_transform, int_rows, lll_reduce
from prejordan.pipeline import (ReportConfig, defining_identities,
                                degree_report, kernel_character)
from prejordan.symrep import format_partition, partitions


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("Defining identities (degree 4)")
    for ident in defining_identities():
        print(f"  {ident}")
        print()

    banner("Expansion matrix")
    E = expansion_matrix(4)
    print(f"  shape {E.shape[0]} x {E.shape[1]} "
          f"(multilinear products x normal dendriform words)")
    print(f"  rank {E.rank()}, kernel dimension {E.transpose().nullity()}")

    banner("Kernel basis from the row transform, lattice reduced")
    _, U = hermite_with_transform(int_rows(E.rows))
    kernel = U[E.rank():]
    reduced = lll_reduce(kernel)
    lengths = sorted(sum(e * e for e in v) for v in reduced)
    print(f"  {len(reduced)} vectors, squared lengths {lengths}")

    banner("Kernel as a symmetric group module")
    char, mults = kernel_character(4)
    print(f"  character {tuple(int(c) for c in char)}")
    for lam, m in zip(partitions(4), mults):
        if m:
            print(f"  [{format_partition(lam)}] appears {m} time(s)")

    banner("Per-partition rank table")
    rep = degree_report(ReportConfig(degree=4, field="Q"))
    print(rep.to_text())

    banner("Block matrix of the top partition")
    X = xblock_matrix(4, (4,))
    print(np.array(int_rows(X.rows)))
    print()
    print("  reduced column form of its transpose (nonzero rows):")
    R = X.transpose().rcf()
    for row in R.rows:
        if any(row):
            print(f"    {[int(e) for e in row]}")
    print()
    nullity = X.transpose().nullity()
    print(f"  nullity {nullity}: the top partition occurs {nullity} times "
          f"in the kernel, matching the character count above")


if __name__ == "__main__":
    main()
