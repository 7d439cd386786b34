"""The total complex as matrices: dimensions, cocycles, coboundaries, classes.

Coordinates: a degree-n total cochain is flattened blockwise with p
descending ((n,0) first, (0,n) last), matching ``TotalCochain.components``;
within a block the coefficient tensor is read in row-major order.  The
matrix of the total differential has columns indexed by the degree-n basis
and rows by the degree-(n+1) basis, so ``matrix @ flatten(c)`` equals
``flatten(total_delta(c))``.

Assembly is by scatter: for each basis cochain of the source we enumerate
the finitely many basis cochains of the target it hits, using inverted
structure-constant tables (which pairs multiply onto a given basis element,
which brackets produce it, which elements the anchor maps onto it).  This
keeps assembly proportional to the number of nonzero matrix entries.  The
matrix route is independent of the direct evaluation in ``cochains`` except
for sharing the structure tensors, which is what makes the agreement tests
between the two meaningful.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import prod

import numpy as np

from .cochains import Cochain, TotalCochain, _shape, total_delta
from .errors import InputError
from .linalg import Matrix, SpanTracker, nullspace_basis, rank_rows, solve
from .structures import CourantPair, CPModule, adjoint_module

ZERO = Fraction(0)
ONE = Fraction(1)

_Block = namedtuple("_Block", "p q shape strides offset size")

_Tables = namedtuple("_Tables", "mul_inv bracket_inv muT")


@lru_cache(maxsize=None)
def _inverse_tables(pair: CourantPair) -> _Tables:
    """Inverted structure constants: everything that lands on a basis element."""
    dA, dL = pair.A.dim, pair.L.dim
    mul_inv = [[] for _ in range(dA)]
    for u in range(dA):
        for v in range(dA):
            for s, c in enumerate(pair.A.mul[u, v]):
                if c:
                    mul_inv[s].append((u, v, c))
    bracket_inv = [[] for _ in range(dL)]
    for u in range(dL):
        for w in range(dL):
            for s, c in enumerate(pair.L.bracket[u, w]):
                if c:
                    bracket_inv[s].append((u, w, c))
    muT = []
    for z in range(dL):
        mat = pair.mu[z].matrix
        cols = [[] for _ in range(dA)]
        for u in range(dA):
            for s, c in enumerate(mat[u]):
                if c:
                    cols[s].append((u, c))
        muT.append(cols)
    return _Tables(mul_inv, bracket_inv, muT)


def _up_entries(pair, module, p, q, key):
    """Scatter of delta_v (p=0) / delta_H (p>0) applied to one basis cochain.

    Yields (target_key, coeff) with the target in bidegree (p+1, q).
    """
    dA = pair.A.dim
    at, xt, v = key[:p], key[p:p + q], key[p + q]
    if p == 0:
        for a in range(dA):
            for w, c in enumerate(module.phi[v, a]):
                if c:
                    yield (a,) + xt + (w,), c
        return
    tabs = _inverse_tables(pair)
    for b0 in range(dA):
        for w, c in enumerate(module.left_act[b0, v]):
            if c:
                yield (b0,) + at + xt + (w,), c
    for k in range(p):
        sign = -ONE if k % 2 == 0 else ONE  # (-1)^(k+1), k 0-based
        for u, vv, c in tabs.mul_inv[at[k]]:
            yield at[:k] + (u, vv) + at[k + 1:] + xt + (v,), sign * c
    last_sign = ONE if (p + 1) % 2 == 0 else -ONE
    for bp in range(dA):
        for w, c in enumerate(module.right_act[v, bp]):
            if c:
                yield at + (bp,) + xt + (w,), last_sign * c


def _down_entries(pair, module, p, q, key):
    """Scatter of leibniz_delta (with its (-1)^(q+1) prefactor, but without
    the (-1)^p total-complex sign) applied to one basis cochain.

    Yields (target_key, coeff) with the target in bidegree (p, q+1).
    """
    dL = pair.L.dim
    at, xt, v = key[:p], key[p:p + q], key[p + q]
    tabs = _inverse_tables(pair)
    eps = ONE if (q + 1) % 2 == 0 else -ONE
    left = module.M_left if p else module.P_left
    right = module.M_right if p else module.P_right
    for z in range(dL):
        for i in range(1, q + 2):
            if i <= q:
                sign = ONE if (i - 1) % 2 == 0 else -ONE
                yt = xt[:i - 1] + (z,) + xt[i - 1:]
                vec = left[z, v]
                corr = -sign
            else:
                sign = ONE if (q + 1) % 2 == 0 else -ONE
                yt = xt + (z,)
                vec = right[v, z]
                corr = sign
            for w, c in enumerate(vec):
                if c:
                    yield at + yt + (w,), eps * sign * c
            for k in range(p):
                for u, c in tabs.muT[z][at[k]]:
                    yield at[:k] + (u,) + at[k + 1:] + yt + (v,), eps * corr * c
    for i in range(1, q + 2):
        isign = -ONE if i % 2 else ONE
        for j in range(i + 1, q + 2):
            for u, w, c in tabs.bracket_inv[xt[j - 2]]:
                yt = list(xt[:i - 1]) + [u] + list(xt[i - 1:])
                yt[j - 1] = w
                yield at + tuple(yt) + (v,), eps * isign * c


class GradedBasisIndex:
    """Flat coordinates on C^n_tot = the direct sum of the C^{p,q}, p+q=n.

    Blocks appear with p descending; ``offsets[k]`` is where the k-th block
    (bidegree (n-k, k)) starts in the flat vector.
    """

    def __init__(self, pair: CourantPair, module: CPModule, n: int):
        if n < 0:
            raise InputError("total degree must be nonnegative")
        self.pair = pair
        self.module = module
        self.n = n
        blocks = []
        offset = 0
        for p in range(n, -1, -1):
            shape = _shape(p, n - p, pair, module)
            strides = [1] * len(shape)
            for k in range(len(shape) - 2, -1, -1):
                strides[k] = strides[k + 1] * shape[k + 1]
            size = prod(shape)
            blocks.append(_Block(p, n - p, shape, tuple(strides), offset, size))
            offset += size
        self.blocks = tuple(blocks)
        self.offsets = tuple(b.offset for b in blocks)
        self.total_dim = offset

    def block(self, p: int) -> _Block:
        return self.blocks[self.n - p]

    def flat_index(self, p: int, key) -> int:
        b = self.blocks[self.n - p]
        return b.offset + sum(s * k for s, k in zip(b.strides, key))

    def flatten(self, c: TotalCochain):
        if c.n != self.n:
            raise InputError(f"degree-{c.n} cochain in a degree-{self.n} index")
        out = []
        for comp, b in zip(c.components, self.blocks):
            if comp.coeffs.shape != b.shape:
                raise InputError(
                    f"component ({b.p},{b.q}) has tensor shape {comp.coeffs.shape}, "
                    f"expected {b.shape} for this pair/module")
            out.extend(comp.coeffs.ravel().tolist())
        return tuple(out)

    def unflatten(self, vec) -> TotalCochain:
        if len(vec) != self.total_dim:
            raise InputError(f"vector length {len(vec)} != total dim {self.total_dim}")
        comps = []
        pos = 0
        for b in self.blocks:
            chunk = [x if isinstance(x, Fraction) else Fraction(x)
                     for x in vec[pos:pos + b.size]]
            arr = np.empty(b.size, dtype=object)
            arr[:] = chunk
            comps.append(Cochain(b.p, b.q, arr.reshape(b.shape)))
            pos += b.size
        return TotalCochain(self.n, tuple(comps))


class TotalComplex:
    """All matrix-level data of one pair's total complex, built lazily.

    Everything derived (indices, triplets, matrices, ranks, kernels) is
    cached on the instance; instances themselves are shared through
    ``total_complex``.
    """

    def __init__(self, pair: CourantPair, module: CPModule = None):
        self.pair = pair
        self.module = module or adjoint_module(pair)
        self._index = {}
        self._trips = {}
        self._cols = {}
        self._mats = {}
        self._ranks = {}
        self._kernels = {}

    # -- coordinates -------------------------------------------------------

    def index(self, n: int) -> GradedBasisIndex:
        if n not in self._index:
            self._index[n] = GradedBasisIndex(self.pair, self.module, n)
        return self._index[n]

    def dim(self, n: int) -> int:
        return self.index(n).total_dim if n >= 0 else 0

    # -- the differential --------------------------------------------------

    def triplets(self, n: int):
        """Sparse (row, col, value) entries of delta^n; duplicates add."""
        if n not in self._trips:
            src, dst = self.index(n), self.index(n + 1)
            trips = []
            for b in src.blocks:
                if b.size == 0:
                    continue
                down_sign = ONE if b.p % 2 == 0 else -ONE
                ranges = [range(s) for s in b.shape]
                for col, key in enumerate(itertools.product(*ranges), start=b.offset):
                    for tkey, c in _up_entries(self.pair, self.module, b.p, b.q, key):
                        trips.append((dst.flat_index(b.p + 1, tkey), col, c))
                    for tkey, c in _down_entries(self.pair, self.module, b.p, b.q, key):
                        trips.append((dst.flat_index(b.p, tkey), col, down_sign * c))
            self._trips[n] = trips
        return self._trips[n]

    def matrix(self, n: int) -> Matrix:
        if n not in self._mats:
            self._mats[n] = Matrix.from_triplets(
                self.dim(n + 1), self.dim(n), self.triplets(n))
        return self._mats[n]

    def columns(self, n: int):
        """Per-column {row: value} dicts of delta^n, for sparse application."""
        if n not in self._cols:
            cols = [{} for _ in range(self.dim(n))]
            for r, c, v in self.triplets(n):
                d = cols[c]
                nv = d.get(r, ZERO) + v
                if nv:
                    d[r] = nv
                else:
                    del d[r]
            self._cols[n] = cols
        return self._cols[n]

    def apply_flat(self, n: int, vec):
        """delta^n applied to flat degree-n coordinates, sparsely."""
        if len(vec) != self.dim(n):
            raise InputError(f"vector length {len(vec)} != dim C^{n} = {self.dim(n)}")
        cols = self.columns(n)
        out = [ZERO] * self.dim(n + 1)
        for j, x in enumerate(vec):
            if x:
                for r, v in cols[j].items():
                    out[r] += v * x
        return tuple(out)

    # -- ranks and spaces ----------------------------------------------------

    def rank(self, n: int) -> int:
        if n < 0:
            return 0
        if n not in self._ranks:
            rows = [{} for _ in range(self.dim(n + 1))]
            for r, c, v in self.triplets(n):
                d = rows[r]
                nv = d.get(c, ZERO) + v
                if nv:
                    d[c] = nv
                else:
                    del d[c]
            self._ranks[n] = rank_rows(rows, self.dim(n))
        return self._ranks[n]

    def kernel(self, n: int):
        if n not in self._kernels:
            self._kernels[n] = nullspace_basis(self.matrix(n))
        return self._kernels[n]

    def cohomology_dim(self, n: int) -> int:
        return self.dim(n) - self.rank(n) - self.rank(n - 1)

    def representatives(self, n: int):
        """One total cochain per cohomology class generator in degree n.

        Kernel vectors are filtered through a span tracker seeded with the
        coboundary image, so the returned cochains are independent modulo
        coboundaries; no canonical-form claim beyond that.
        """
        want = self.cohomology_dim(n)
        if want == 0:
            return []
        tracker = SpanTracker(self.dim(n))
        if n > 0:
            for col in self.columns(n - 1):
                if col:
                    v = [ZERO] * self.dim(n)
                    for r, x in col.items():
                        v[r] = x
                    tracker.add(v)
        reps = []
        for v in self.kernel(n):
            if tracker.add(v):
                reps.append(self.index(n).unflatten(v))
                if len(reps) == want:
                    break
        assert len(reps) == want
        return reps

    # -- membership ----------------------------------------------------------

    def is_cocycle(self, c: TotalCochain) -> bool:
        return total_delta(c, self.pair, self.module).is_zero()

    def is_coboundary(self, c: TotalCochain):
        """A preimage of c under the total differential, or None.

        Degree 0 has no space below it, so the answer there is always None.
        """
        if c.n == 0:
            return None
        vec = self.index(c.n).flatten(c)
        sol = solve(self.matrix(c.n - 1), vec)
        return None if sol is None else self.index(c.n - 1).unflatten(sol)


@lru_cache(maxsize=None)
def _shared(pair: CourantPair, module: CPModule) -> TotalComplex:
    return TotalComplex(pair, module)


def total_complex(pair: CourantPair, module: CPModule = None) -> TotalComplex:
    """The cached total complex of a pair (adjoint coefficients by default)."""
    return _shared(pair, module or adjoint_module(pair))


# ---------------------------------------------------------------------------
# plain-function API
# ---------------------------------------------------------------------------

def total_space_dim(n: int, pair: CourantPair, module: CPModule = None) -> int:
    """dim C^n_tot = sum over p+q=n of (dim A)^p (dim L)^q (coefficient dim)."""
    return total_complex(pair, module).dim(n)


def total_delta_matrix(n: int, pair: CourantPair, module: CPModule = None) -> Matrix:
    """The matrix of delta_tot: C^n_tot -> C^{n+1}_tot in flat coordinates."""
    return total_complex(pair, module).matrix(n)


def cohomology_dim(n: int, pair: CourantPair, module: CPModule = None) -> int:
    """dim HL^n = dim ker(delta^n) - rank(delta^{n-1}); degree 0 is just the kernel."""
    return total_complex(pair, module).cohomology_dim(n)


def cohomology_basis(n: int, pair: CourantPair, module: CPModule = None):
    """Representative total cochains, one per degree-n cohomology class."""
    return total_complex(pair, module).representatives(n)


def is_cocycle(c: TotalCochain, pair: CourantPair, module: CPModule = None) -> bool:
    """Whether total_delta(c) vanishes exactly (direct evaluation, no matrix)."""
    return total_complex(pair, module).is_cocycle(c)


def is_coboundary(c: TotalCochain, pair: CourantPair, module: CPModule = None):
    """A total cochain b with total_delta(b) = c, or None if none exists."""
    return total_complex(pair, module).is_coboundary(c)


# ---------------------------------------------------------------------------
# single rows and columns of the bicomplex (for oracle comparison and the
# CLI's column views)
# ---------------------------------------------------------------------------

def _block_matrix(pair, module, p, q, entries_gen, tp, tq) -> Matrix:
    sshape = _shape(p, q, pair, module)
    tshape = _shape(tp, tq, pair, module)
    strides = [1] * len(tshape)
    for k in range(len(tshape) - 2, -1, -1):
        strides[k] = strides[k + 1] * tshape[k + 1]
    trips = []
    for col, key in enumerate(itertools.product(*[range(s) for s in sshape])):
        for tkey, c in entries_gen(pair, module, p, q, key):
            trips.append((sum(s * k for s, k in zip(strides, tkey)), col, c))
    return Matrix.from_triplets(prod(tshape), prod(sshape), trips)


def row_delta_matrix(p: int, pair: CourantPair, module: CPModule = None) -> Matrix:
    """The q = 0 row differential C^{p,0} -> C^{p+1,0}.

    This is the vertical map (composition with phi) at p = 0 and the
    bar-type coboundary at p >= 1; for p >= 1 it is the classical complex
    of the associative algebra with coefficients in M.
    """
    if p < 0:
        raise InputError("p must be nonnegative")
    module = module or adjoint_module(pair)
    return _block_matrix(pair, module, p, 0, _up_entries, p + 1, 0)


def column_delta_matrix(q: int, pair: CourantPair, module: CPModule = None) -> Matrix:
    """The p = 0 column differential C^{0,q} -> C^{0,q+1} on P-valued cochains.

    Carries the same (-1)^(q+1) prefactor the total complex uses, i.e. it is
    that unit times the classical bracket-algebra coboundary.
    """
    if q < 0:
        raise InputError("q must be nonnegative")
    module = module or adjoint_module(pair)
    return _block_matrix(pair, module, 0, q, _down_entries, 0, q + 1)
