"""Representation theory of the symmetric groups S_n, n small.

Partitions are tuples of weakly decreasing positive ints and are enumerated
in descending lexicographic order, so for n = 4: 4, 31, 22, 211, 1111.
Conjugacy classes are labeled by cycle types and listed in the reverse
order (identity first); the class representative for a cycle type is the
permutation whose cycles occupy consecutive blocks 1..m1, m1+1..m1+m2, ...

Irreducible representation matrices come from Clifton's construction of
Young's natural representation: for standard tableaux T_1..T_d of shape
lambda (ordered lexicographically by row-reading word) the matrix A(pi) has
entry (i, j) equal to 0 if two numbers share a row of pi T_j and a column
of T_i, and otherwise to the sign of the column permutation of T_i that
aligns it with pi T_j; then rho(pi) = A(id)^-1 A(pi).  The construction is
gated by tests for the homomorphism property and for traces matching the
character table, which is computed independently by the Murnaghan-Nakayama
rule.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cache

import numpy as np

from .errors import InvariantViolation
from .linalg import RationalEchelon, express_in_rowspace
from .monomials import inverse_perm

Partition = tuple


@cache
def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in descending lexicographic order."""

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(gen(n, n))


def format_partition(lam: Partition) -> str:
    if any(part > 9 for part in lam):
        return ",".join(str(part) for part in lam)
    return "".join(str(part) for part in lam)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    parts = tuple(int(t) for t in text.split(",")) if "," in text \
        else tuple(int(ch) for ch in text)
    if not parts or any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"not a partition: {text!r}")
    return parts


def dimension(lam: Partition) -> int:
    """Number of standard tableaux, by the hook length formula."""
    n = sum(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, part in enumerate(lam):
        for j in range(part):
            hooks *= part - j + conj[j] - i - 1
    return math.factorial(n) // hooks


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > c) for c in range(lam[0]))


@cache
def standard_tableaux(lam: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All standard tableaux of the given shape, ordered lexicographically
    by row-reading word."""
    n = sum(lam)
    rows = [[] for _ in lam]
    out = []

    def place(v):
        if v > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, r in enumerate(rows):
            if len(r) < lam[i] and (i == 0 or len(rows[i - 1]) > len(r)):
                r.append(v)
                place(v + 1)
                r.pop()

    place(1)
    out.sort(key=lambda t: tuple(v for row in t for v in row))
    return tuple(out)


# ------------------------------------------------------- conjugacy classes


def class_types(n: int) -> tuple[Partition, ...]:
    """Cycle types in the column order of the character table: identity
    class first."""
    return tuple(reversed(partitions(n)))


def class_size(mu: Partition) -> int:
    n = sum(mu)
    z = 1
    for part in set(mu):
        m = mu.count(part)
        z *= part ** m * math.factorial(m)
    return math.factorial(n) // z


def class_representative(mu: Partition) -> tuple[int, ...]:
    """Permutation with cycles on consecutive blocks, one-line notation."""
    out = []
    start = 1
    for part in mu:
        block = list(range(start, start + part))
        out.extend(block[1:] + block[:1])
        start += part
    return tuple(out)


def cycle_type(perm: tuple[int, ...]) -> Partition:
    n = len(perm)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        k = s
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# ------------------------------------------------- Murnaghan-Nakayama rule


@cache
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    m = len(lam)
    beta = [lam[i] + m - 1 - i for i in range(m)]
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or (b - k) in bset:
            continue
        height = sum(1 for x in beta if b - k < x < b)
        nb = sorted((x for x in beta if x != b), reverse=True)
        nb.append(b - k)
        nb.sort(reverse=True)
        newlam = tuple(x - (m - 1 - i) for i, x in enumerate(nb))
        newlam = tuple(x for x in newlam if x > 0)
        total += (-1) ** height * _mn(newlam, rest)
    return total


def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character chi_lambda evaluated on cycle type mu."""
    return _mn(lam, tuple(sorted(mu, reverse=True)))


@cache
def character_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows over partitions(n), columns over class_types(n)."""
    return tuple(tuple(character(lam, mu) for mu in class_types(n))
                 for lam in partitions(n))


def decompose(char_values, n: int) -> tuple[int, ...]:
    """Multiplicities of the irreducibles in a character, by orthogonality.

    char_values runs over class_types(n).  Raises InvariantViolation when a
    multiplicity comes out non-integral or negative, which means the input
    was not the character of a module.
    """
    types = class_types(n)
    if len(char_values) != len(types):
        raise ValueError("character length does not match the class count")
    order = math.factorial(n)
    out = []
    for lam in partitions(n):
        acc = sum(class_size(mu) * Fraction(v) * character(lam, mu)
                  for mu, v in zip(types, char_values))
        mult = acc / order
        if mult.denominator != 1 or mult < 0:
            raise InvariantViolation(
                f"multiplicity of {format_partition(lam)} is {mult}, "
                "input is not a character")
        out.append(int(mult))
    return tuple(out)


# ------------------------------------------------------ Clifton's matrices


@cache
def _clifton_data(lam: Partition):
    tabs = standard_tableaux(lam)
    d = len(tabs)
    n = sum(lam)
    colheight = np.array(conjugate(lam), dtype=np.int64)
    cumh = np.concatenate([[0], np.cumsum(colheight)])
    row_of = np.zeros((d, n), dtype=np.int64)
    col_of = np.zeros((d, n), dtype=np.int64)
    for t, tab in enumerate(tabs):
        for r, row in enumerate(tab):
            for c, v in enumerate(row):
                row_of[t, v - 1] = r
                col_of[t, v - 1] = c
    src_rank = cumh[col_of] + row_of          # column-major cell rank
    xorder = np.argsort(src_rank, axis=1)
    mcol = colheight[col_of]                  # height of the column holding x
    return d, n, row_of, col_of, cumh, xorder, mcol


def clifton_a(lam: Partition, perm: tuple[int, ...]) -> np.ndarray:
    """The d x d matrix A(perm) of Clifton's construction, entries -1/0/1."""
    d, n, row_of, col_of, cumh, xorder, mcol = _clifton_data(lam)
    ip = np.array(inverse_perm(perm), dtype=np.int64) - 1
    rowS = row_of[:, ip]                                  # (b, x)
    ok = (rowS[None, :, :] < mcol[:, None, :]).all(axis=2)
    tcell = cumh[col_of][:, None, :] + rowS[None, :, :]   # (a, b, x)
    q = np.take_along_axis(tcell, np.broadcast_to(xorder[:, None, :], tcell.shape), axis=2)
    qs = np.sort(q, axis=2)
    ok &= ~(np.diff(qs, axis=2) == 0).any(axis=2)
    inv = np.zeros((d, d), dtype=np.int64)
    for k in range(n - 1):
        inv += (q[:, :, k, None] > q[:, :, k + 1:]).sum(axis=2)
    sign = 1 - 2 * (inv & 1)
    return np.where(ok, sign, 0).astype(np.int8)


def _invert_fraction(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    d = len(rows)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(rows)]
    state = RationalEchelon(2 * d)
    state.add_rows(aug)
    if state.rank != d or state.sorted_pivcols() != list(range(d)):
        raise InvariantViolation("matrix is singular")
    return [row[d:] for row in state.rcf_rows()]


def _invert_mod(M: np.ndarray, p: int) -> np.ndarray:
    d = M.shape[0]
    aug = np.concatenate([M.astype(np.int64) % p, np.eye(d, dtype=np.int64)],
                         axis=1)
    for c in range(d):
        piv = next((r for r in range(c, d) if aug[r, c] % p), None)
        if piv is None:
            raise InvariantViolation(f"matrix is singular mod {p}")
        if piv != c:
            aug[[c, piv]] = aug[[piv, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), -1, p) % p
        for r in range(d):
            if r != c and aug[r, c]:
                aug[r] = (aug[r] - aug[r, c] * aug[c]) % p
    return aug[:, d:]


class RhoCache:
    """Representation matrices for one partition over one field.

    Over 'Q' matrices are lists of Fraction rows; over a prime p they are
    numpy int64 arrays of residues.  A-matrices are cached per permutation,
    so feeding many group algebra elements stays cheap.
    """

    def __init__(self, lam: Partition, field='Q'):
        self.lam = lam
        self.field = field
        self.dim = dimension(lam)
        a_id = clifton_a(lam, tuple(range(1, sum(lam) + 1)))
        if field == 'Q':
            self._a_id_inv = _invert_fraction(
                [[Fraction(int(e)) for e in row] for row in a_id])
        else:
            self._a_id_inv = _invert_mod(a_id, int(field))
        self._acache: dict[tuple[int, ...], np.ndarray] = {}

    def a(self, perm: tuple[int, ...]) -> np.ndarray:
        hit = self._acache.get(perm)
        if hit is None:
            hit = self._acache[perm] = clifton_a(self.lam, perm)
        return hit

    def of_perm(self, perm: tuple[int, ...]):
        return self.of_element({perm: 1})

    def raw_of_element(self, terms: dict) -> np.ndarray:
        """sum c * A(perm) without the change of basis A(id)^-1.

        The raw block is A(id) times the representation matrix of the
        element.  Since A(id) is invertible and multiplies every block of a
        stacked block matrix on the left, row spaces of block rows and
        ranks of the whole matrix are the same as with genuine
        representation blocks, so rank pipelines use these directly.
        """
        d = self.dim
        acc = np.zeros((d, d), dtype=np.int64)
        for perm, coeff in terms.items():
            c = int(coeff)
            if self.field != 'Q':
                c %= int(self.field)
            if c:
                acc += c * self.a(perm).astype(np.int64)
        if self.field != 'Q':
            acc %= int(self.field)
        return acc

    def raw_of_elements(self, elems) -> np.ndarray:
        """Raw blocks of several elements side by side, shape (d, d*k).

        Prime fields only; float64 accumulation is exact here because every
        intermediate stays far below 2**53.
        """
        p = int(self.field)
        d = self.dim
        out = np.zeros((d, d * len(elems)), dtype=np.float64)
        for k, terms in enumerate(elems):
            blk = out[:, k * d:(k + 1) * d]
            for perm, coeff in terms.items():
                c = int(coeff) % p
                if c:
                    blk += c * self.a(perm)
        out %= p
        return out.astype(np.int64)

    def of_element(self, terms: dict):
        """rho applied to a group algebra element {perm: coeff}."""
        d = self.dim
        if self.field == 'Q':
            acc = [[Fraction(0)] * d for _ in range(d)]
            for perm, coeff in terms.items():
                A = self.a(perm)
                for i in range(d):
                    row = acc[i]
                    arow = A[i]
                    for j in range(d):
                        if arow[j]:
                            row[j] += coeff * int(arow[j])
            inv = self._a_id_inv
            return [[sum(inv[i][k] * acc[k][j] for k in range(d) if inv[i][k])
                     for j in range(d)] for i in range(d)]
        p = int(self.field)
        acc = np.zeros((d, d), dtype=np.int64)
        for perm, coeff in terms.items():
            c = int(coeff) % p
            if c:
                acc += c * self.a(perm).astype(np.int64)
        return self._a_id_inv @ (acc % p) % p


def clifton_matrix(lam: Partition, perm: tuple[int, ...], field='Q'):
    """Natural irreducible representation matrix rho_lambda(perm)."""
    return RhoCache(lam, field).of_perm(perm)


# ------------------------------------------------------- module characters


def module_character(vectors, n: int, act) -> tuple[Fraction, ...]:
    """Character of the S_n-module spanned by the given vectors.

    act(perm, vector) must return the action of the permutation on a
    vector of the ambient space.  The vectors must span an invariant
    subspace and be independent; InvariantViolation otherwise.
    """
    vectors = [list(v) for v in vectors]
    out = []
    for mu in class_types(n):
        if not vectors:
            out.append(Fraction(0))
            continue
        sigma = class_representative(mu)
        images = [act(sigma, v) for v in vectors]
        try:
            coords = express_in_rowspace(vectors, images)
        except ValueError as exc:
            raise InvariantViolation(
                f"subspace is not invariant under class {format_partition(mu)}"
            ) from exc
        out.append(sum(coords[k][k] for k in range(len(vectors))))
    return tuple(out)
