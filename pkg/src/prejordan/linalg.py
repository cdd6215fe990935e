"""Exact dense linear algebra over Q and over prime fields.

Everything here is exact.  Rational computations use fractions.Fraction;
modular computations keep integer residues, and the numpy fast paths only
ever hold integer values in float64, where every intermediate sum stays far
below 2**53 and is therefore computed exactly.

Conventions fixed across the package:

* RCF is the reduced row echelon form: unit pivots, zeros above and below
  each pivot, pivot columns strictly increasing, zero rows dropped.  The
  RCF of a matrix is unique, so batch and chunked runs agree entry for
  entry.
* Pivot selection is first-nonzero in arrival order; over a field any
  nonzero pivot serves.
* The canonical nullspace basis solves for the free columns of the RCF and
  then takes the RCF of the resulting stack, making the construction
  idempotent.
* Hermite normal form is row-style: H = U A with U unimodular, positive
  pivots, entries above a pivot reduced into [0, pivot), zero rows last.
  The rows of U matching zero rows of H span the left integer nullspace of
  A; that block of U is itself put in Hermite form so the output is
  canonical.
* LLL reduction defaults to delta = 3/4 with exact rational Gram-Schmidt
  data.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Field = Union[str, int]  # 'Q' or a prime


def _check_field(field: Field) -> Field:
    if field == 'Q':
        return field
    p = int(field)
    if p < 2:
        raise ValueError(f"not a usable prime: {field!r}")
    return p


class RationalEchelon:
    """Running RCF over Q; rows arrive in any order, singly or in chunks.

    With reduced=False the state keeps primitive integer rows without unit
    pivots (content cleared after every elimination), which is much faster
    when only the rank is wanted; rcf_rows and nullspace_basis require
    reduced=True.
    """

    def __init__(self, ncols: int, reduced: bool = True):
        self.ncols = ncols
        self.reduced = reduced
        self.rows: list[list] = []
        self.pivcols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add_rows(self, rows: Iterable[Sequence]) -> int:
        return sum(self.add_row(r) for r in rows)

    def add_row(self, row: Sequence) -> bool:
        """Reduce one row into the state; True if the rank grew."""
        if len(row) != self.ncols:
            raise ValueError("row length does not match")
        return (self._add_reduced if self.reduced else self._add_primitive)(row)

    def _add_reduced(self, row) -> bool:
        row = [Fraction(e) for e in row]
        for pc, prow in zip(self.pivcols, self.rows):
            c = row[pc]
            if c:
                row = [a - c * b for a, b in zip(row, prow)]
        piv = next((j for j, e in enumerate(row) if e), None)
        if piv is None:
            return False
        inv = 1 / row[piv]
        row = [e * inv for e in row]
        for i, prow in enumerate(self.rows):
            c = prow[piv]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(prow, row)]
        self.rows.append(row)
        self.pivcols.append(piv)
        return True

    def _add_primitive(self, row) -> bool:
        den = math.lcm(*(Fraction(e).denominator for e in row)) if row else 1
        row = [int(Fraction(e) * den) for e in row]
        for pc, prow in zip(self.pivcols, self.rows):
            c = row[pc]
            if c:
                d = prow[pc]
                row = [a * d - c * b for a, b in zip(row, prow)]
                g = math.gcd(*row)
                if g > 1:
                    row = [a // g for a in row]
        piv = next((j for j, e in enumerate(row) if e), None)
        if piv is None:
            return False
        if row[piv] < 0:
            row = [-a for a in row]
        self.rows.append(row)
        self.pivcols.append(piv)
        return True

    def rcf_rows(self) -> list[list[Fraction]]:
        if not self.reduced:
            raise ValueError("state built with reduced=False has no RCF")
        order = sorted(range(len(self.rows)), key=lambda i: self.pivcols[i])
        return [self.rows[i][:] for i in order]

    def sorted_pivcols(self) -> list[int]:
        return sorted(self.pivcols)

    def nullspace_basis(self) -> list[list[Fraction]]:
        if not self.reduced:
            raise ValueError("state built with reduced=False has no RCF")
        piv = self.sorted_pivcols()
        rows = self.rcf_rows()
        pivset = set(piv)
        free = [c for c in range(self.ncols) if c not in pivset]
        vecs = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, pc in enumerate(piv):
                v[pc] = -rows[r][f]
            vecs.append(v)
        canon = RationalEchelon(self.ncols)
        canon.add_rows(vecs)
        return canon.rcf_rows()


class ModularEchelon:
    """Running RCF over F_p backed by numpy.

    Reduced rows are stored as small integers; new rows are eliminated
    against them with float64 matrix products, which are exact because every
    accumulated sum is an integer below 2**53 (guarded in __init__).  Rows
    are processed in outer blocks (one conversion sweep of the stored rows
    per block) and inner mini blocks (one back-substitution product per mini
    block), so the arithmetic cost is dominated by BLAS calls and the peak
    memory by the int8 store plus one float64 segment.
    """

    def __init__(self, ncols: int, p: int, block_rows: int = 2048,
                 mini_rows: int = 64, seg_rows: int = 4096):
        self.ncols = ncols
        self.p = int(p)
        if self.p < 2:
            raise ValueError("modulus must be at least 2")
        if ncols * (self.p - 1) ** 2 >= 2 ** 53:
            raise ValueError("modulus too large for exact float64 products")
        self.block_rows = block_rows
        self.mini_rows = mini_rows
        self.seg_rows = seg_rows
        if self.p < 128:
            self._dtype = np.int8
        elif self.p < 2 ** 15:
            self._dtype = np.int16
        else:
            self._dtype = np.int32
        self._R = np.empty((0, ncols), dtype=self._dtype)
        self._n = 0
        self._piv = np.empty(0, dtype=np.intp)  # arrival order

    @property
    def rank(self) -> int:
        return self._n

    def add_rows(self, rows) -> int:
        """Reduce a batch of integer rows into the state; returns the rank
        increase."""
        M = np.asarray(rows)
        if M.size == 0:
            return 0
        if M.ndim == 1:
            M = M.reshape(1, -1)
        if M.shape[1] != self.ncols:
            raise ValueError("row length does not match")
        if M.dtype != np.float64:
            M = M.astype(np.int64) % self.p
        added = 0
        for s in range(0, M.shape[0], self.block_rows):
            block = np.mod(M[s:s + self.block_rows].astype(np.float64), self.p)
            added += self._add_block(block)
        return added

    def _forward(self, B: np.ndarray) -> None:
        # eliminate B against the stored rows, a row segment at a time
        p = self.p
        for a in range(0, self._n, self.seg_rows):
            b = min(a + self.seg_rows, self._n)
            coef = B[:, self._piv[a:b]]
            if coef.any():
                B -= coef @ self._R[a:b].astype(np.float64)
                np.mod(B, p, out=B)

    def _add_block(self, B: np.ndarray) -> int:
        p = self.p
        self._forward(B)
        nb = np.empty_like(B)
        npv: list[int] = []
        for s in range(0, B.shape[0], self.mini_rows):
            Bm = B[s:s + self.mini_rows]
            if npv:
                arr = np.asarray(npv, dtype=np.intp)
                coef = Bm[:, arr]
                if coef.any():
                    Bm -= coef @ nb[:len(npv)]
                    np.mod(Bm, p, out=Bm)
            fresh = len(npv)
            for i in range(Bm.shape[0]):
                row = Bm[i]
                if fresh != len(npv):
                    arr = np.asarray(npv[fresh:], dtype=np.intp)
                    coef = row[arr]
                    if coef.any():
                        row -= coef @ nb[fresh:len(npv)]
                        np.mod(row, p, out=row)
                nz = np.nonzero(row)[0]
                if nz.size == 0:
                    continue
                pc = int(nz[0])
                inv = pow(int(row[pc]), -1, p)
                if inv != 1:
                    row *= inv
                    np.mod(row, p, out=row)
                row[pc] = 1.0
                if len(npv) > fresh:
                    sub = nb[fresh:len(npv)]
                    col = sub[:, pc].copy()
                    if col.any():
                        sub -= np.outer(col, row)
                        np.mod(sub, p, out=sub)
                nb[len(npv)] = row
                npv.append(pc)
            if fresh and len(npv) > fresh:
                arr = np.asarray(npv[fresh:], dtype=np.intp)
                coef = nb[:fresh, arr]
                if coef.any():
                    nb[:fresh] -= coef @ nb[fresh:len(npv)]
                    np.mod(nb[:fresh], p, out=nb[:fresh])
        if not npv:
            return 0
        new = nb[:len(npv)]
        self._back_eliminate(new, npv)
        self._append(new, npv)
        return len(npv)

    def _back_eliminate(self, new: np.ndarray, npv: list[int]) -> None:
        arr = np.asarray(npv, dtype=np.intp)
        for a in range(0, self._n, self.seg_rows):
            b = min(a + self.seg_rows, self._n)
            seg = self._R[a:b].astype(np.float64)
            coef = seg[:, arr]
            if coef.any():
                seg -= coef @ new
                np.mod(seg, self.p, out=seg)
                self._R[a:b] = seg.astype(self._dtype)

    def _append(self, new: np.ndarray, npv: list[int]) -> None:
        need = self._n + len(npv)
        if need > self._R.shape[0]:
            cap = max(need, self._n + (self._n >> 1), 256)
            grown = np.empty((cap, self.ncols), dtype=self._dtype)
            grown[:self._n] = self._R[:self._n]
            self._R = grown
        self._R[self._n:need] = new.astype(self._dtype)
        self._piv = np.concatenate([self._piv, np.asarray(npv, dtype=np.intp)])
        self._n = need

    def rcf(self) -> tuple[np.ndarray, np.ndarray]:
        """(rows, pivcols) sorted by pivot column; rows have int entries."""
        order = np.argsort(self._piv[:self._n], kind='stable')
        return (self._R[:self._n][order].astype(np.int64),
                self._piv[:self._n][order].copy())

    def nullspace_basis(self) -> np.ndarray:
        R, piv = self.rcf()
        free = np.setdiff1d(np.arange(self.ncols), piv)
        N = np.zeros((free.size, self.ncols), dtype=np.int64)
        N[np.arange(free.size), free] = 1
        if piv.size:
            N[:, piv] = (-R[:, free].T) % self.p
        canon = ModularEchelon(self.ncols, self.p, block_rows=self.block_rows,
                               mini_rows=self.mini_rows, seg_rows=self.seg_rows)
        canon.add_rows(N)
        return canon.rcf()[0]


def echelon_state(ncols: int, field: Field, reduced: bool = True,
                  **modular_opts):
    """Fresh chunked-RCF state for the given field; feed it add_rows calls."""
    field = _check_field(field)
    if field == 'Q':
        return RationalEchelon(ncols, reduced=reduced)
    return ModularEchelon(ncols, field, **modular_opts)


class ExactMatrix:
    """Dense exact matrix with an explicit field tag, 'Q' or a prime."""

    def __init__(self, rows, field: Field = 'Q'):
        self.field = _check_field(field)
        if self.field == 'Q':
            self.rows = [[Fraction(e) for e in row] for row in rows]
        else:
            self.rows = [[int(e) % self.field for e in row] for row in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        self._ncols = widths.pop() if widths else 0

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self._ncols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field})"

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix([list(col) for col in zip(*self.rows)] if self.rows
                           else [], self.field)

    def _state(self) -> Union[RationalEchelon, ModularEchelon]:
        state = echelon_state(self.ncols, self.field)
        state.add_rows(self.rows)
        return state

    def rank(self) -> int:
        if self.field != 'Q':
            return self._state().rank
        state = RationalEchelon(self.ncols, reduced=False)
        state.add_rows(self.rows)
        return state.rank

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def rcf(self) -> 'ExactMatrix':
        state = self._state()
        if self.field == 'Q':
            return ExactMatrix(state.rcf_rows(), 'Q')
        return ExactMatrix(state.rcf()[0].tolist(), self.field)

    def nullspace_basis(self) -> 'ExactMatrix':
        state = self._state()
        if self.field == 'Q':
            return ExactMatrix(state.nullspace_basis(), 'Q')
        return ExactMatrix(state.nullspace_basis().tolist(), self.field)


def rcf(matrix: ExactMatrix) -> tuple[ExactMatrix, int]:
    """(reduced row echelon form without zero rows, rank)."""
    form = matrix.rcf()
    return form, form.nrows


def nullspace_basis(matrix: ExactMatrix) -> ExactMatrix:
    return matrix.nullspace_basis()


def express_in_rowspace(rows, targets) -> list[list[Fraction]]:
    """Coordinates of each target vector in the basis given by rows.

    Returns C with targets[i] == sum_j C[i][j] * rows[j].  Raises ValueError
    when the rows are dependent or a target falls outside their span.
    """
    rows = [[Fraction(e) for e in r] for r in rows]
    m = len(rows)
    store = []  # (pivot col, echelon row, expression in the input rows)
    for i, row in enumerate(rows):
        v = row[:]
        expr = [Fraction(0)] * m
        expr[i] = Fraction(1)
        for pc, w, u in store:
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, w)]
                expr = [a - c * b for a, b in zip(expr, u)]
        piv = next((j for j, e in enumerate(v) if e), None)
        if piv is None:
            raise ValueError("rows are linearly dependent")
        inv = 1 / v[piv]
        store.append((piv, [e * inv for e in v], [e * inv for e in expr]))
    out = []
    for t in targets:
        v = [Fraction(e) for e in t]
        coords = [Fraction(0)] * m
        for pc, w, u in store:
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, w)]
                coords = [a + c * b for a, b in zip(coords, u)]
        if any(v):
            raise ValueError("target lies outside the row space")
        out.append(coords)
    return out


# ---------------------------------------------------------------- integers


def int_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        new = []
        for e in row:
            f = Fraction(e)
            if f.denominator != 1:
                raise ValueError("integer matrix expected")
            new.append(f.numerator)
        out.append(new)
    return out


def hermite_with_transform(rows) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form with transform: returns (H, U) with
    U A = H, U unimodular.  Pivots positive, entries above a pivot lie in
    [0, pivot), zero rows come last.  The rows of U beside the zero rows
    of H are a kernel basis exactly as the elimination leaves them; LLL
    is the tool for making that basis short, so no cleanup happens here."""
    H = [row[:] for row in int_rows(rows)]
    m = len(H)
    n = len(H[0]) if H else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def rowop(i, q, r):
        # row_i -= q * row_r
        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        U[i] = [a - q * b for a, b in zip(U[i], U[r])]

    r = 0
    for c in range(n):
        while True:
            live = [i for i in range(r, m) if H[i][c]]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(H[i][c]))
            if i0 != r:
                H[i0], H[r] = H[r], H[i0]
                U[i0], U[r] = U[r], U[i0]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    rowop(i, H[i][c] // H[r][c], r)
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    rowop(i, q, r)
            r += 1
            if r == m:
                break
    return H, U


def int_det(rows) -> int:
    """Determinant of a square integer matrix, Bareiss elimination."""
    M = [row[:] for row in int_rows(rows)]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("square matrix expected")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# --------------------------------------------------------------------- LLL


def _gram_schmidt(basis: list[list[int]]):
    k = len(basis)
    mu = [[Fraction(0)] * k for _ in range(k)]
    norms: list[Fraction] = []
    star: list[list[Fraction]] = []
    for i in range(k):
        v = [Fraction(e) for e in basis[i]]
        for j in range(i):
            if norms[j] == 0:
                raise ValueError("basis is linearly dependent")
            mu[i][j] = Fraction(sum(a * b for a, b in zip(basis[i], star[j]))) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
        star.append(v)
        norms.append(sum(a * a for a in v))
    return mu, norms


def lll_reduce(rows, delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduced basis of the lattice spanned by the given independent
    integer rows; exact arithmetic throughout."""
    basis = [row[:] for row in int_rows(rows)]
    k = len(basis)
    if k <= 1:
        return basis
    mu, norms = _gram_schmidt(basis)
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
                for j2 in range(j):
                    mu[i][j2] -= q * mu[j][j2]
                mu[i][j] -= q
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            basis[i - 1], basis[i] = basis[i], basis[i - 1]
            mu, norms = _gram_schmidt(basis)
            i = max(i - 1, 1)
    return basis


def gram_det(rows) -> int:
    """Determinant of the Gram matrix of integer rows; an invariant of the
    lattice basis up to unimodular changes."""
    M = int_rows(rows)
    gram = [[sum(a * b for a, b in zip(u, v)) for v in M] for u in M]
    return int_det(gram)


# ---------------------------------------------------------------- file I/O


def write_matrix(f, rows, field: Field) -> None:
    """Matrix interchange format: header 'rows cols field', then one line of
    entries per row (rationals as p or p/q, residues as integers)."""
    from .monomials import coeff_str
    rows = list(rows)
    ncols = len(rows[0]) if rows else 0
    field = _check_field(field)
    f.write(f"{len(rows)} {ncols} {field}\n")
    for row in rows:
        if field == 'Q':
            f.write(" ".join(coeff_str(Fraction(e)) for e in row) + "\n")
        else:
            f.write(" ".join(str(int(e) % field) for e in row) + "\n")


def read_matrix(f) -> tuple[list[list], Field]:
    tokens = f.read().split()
    if len(tokens) < 3:
        raise ValueError("truncated matrix file")
    nrows, ncols = int(tokens[0]), int(tokens[1])
    field = _check_field(tokens[2] if tokens[2] == 'Q' else int(tokens[2]))
    body = tokens[3:]
    if len(body) != nrows * ncols:
        raise ValueError("matrix body does not match header")
    conv = Fraction if field == 'Q' else int
    rows = [[conv(body[i * ncols + j]) for j in range(ncols)]
            for i in range(nrows)]
    return rows, field
