"""Exact integer matrix algebra.

Everything downstream (simplicial cohomology, local systems, spectral
pages) reduces to Smith normal form computations on arbitrary-precision
integer matrices.  Intermediate SNF entries can grow far beyond machine
words, so plain Python ints are mandatory throughout; there is no float
anywhere in this module.

The main objects:

* :class:`IntMatrix` -- immutable dense integer matrix.
* :class:`SmithDecomposition` -- U @ A @ V = D with U, V unimodular.
* :class:`FgAbGroup` -- canonical form Z^r (+) Z/t1 (+) ... with the
  torsion coefficients >= 2 and divisibility-sorted, so group equality
  is structural comparison.
* :class:`Subquotient` -- a group Z/B presented inside an ambient free
  module, carrying lift/project maps so later differentials can be
  evaluated on actual representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ._kernel import smith_with_transforms


class IntMatrix:
    """Immutable integer matrix, row-major.

    >>> IntMatrix([[1, 2], [3, 4]]) * IntMatrix.identity(2)
    IntMatrix([[1, 2], [3, 4]])
    """

    __slots__ = ("_nrows", "_ncols", "_data")

    def __init__(self, rows, shape=None):
        data = tuple(tuple(x for x in row) for row in rows)
        if shape is not None:
            nrows, ncols = shape
            if len(data) not in (0, nrows):
                raise ValueError("row count disagrees with shape")
            if len(data) == 0:
                data = tuple(() for _ in range(nrows)) if ncols == 0 else data
                if ncols != 0 and nrows != 0:
                    raise ValueError("missing entries for nonempty shape")
        else:
            nrows = len(data)
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError("entries must be int, got %r" % (x,))
        self._nrows = nrows
        self._ncols = ncols
        self._data = data

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], shape=(nrows, ncols))

    @classmethod
    def from_columns(cls, columns, nrows=None):
        cols = [tuple(c) for c in columns]
        if nrows is None:
            if not cols:
                raise ValueError("need nrows for an empty column list")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(nrows)],
                   shape=(nrows, len(cols)))

    @property
    def nrows(self):
        return self._nrows

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (self._nrows, self._ncols)

    @property
    def entries(self):
        """Row-major flat tuple of all entries."""
        return tuple(x for row in self._data for x in row)

    def rows(self):
        return self._data

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(row[j] for row in self._data)

    def columns(self):
        return tuple(self.column(j) for j in range(self._ncols))

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self._nrows, self._ncols, self._data))

    def __repr__(self):
        if self._nrows * self._ncols == 0:
            return "IntMatrix.zeros(%d, %d)" % self.shape
        return "IntMatrix(%s)" % ([list(r) for r in self._data],)

    def __neg__(self):
        return IntMatrix([[-x for x in row] for row in self._data],
                         shape=self.shape)

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)]
             for ra, rb in zip(self._data, other._data)],
            shape=self.shape)

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)]
             for ra, rb in zip(self._data, other._data)],
            shape=self.shape)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[other * x for x in row] for row in self._data],
                             shape=self.shape)
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise ValueError("shape mismatch: %s * %s" % (self.shape, other.shape))
        bt = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt]
             for row in self._data],
            shape=(self._nrows, other._ncols))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def apply(self, vector):
        """Matrix times column vector (tuple in, tuple out)."""
        if len(vector) != self._ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vector))
                     for row in self._data)

    def transpose(self):
        return IntMatrix([[self._data[i][j] for i in range(self._nrows)]
                          for j in range(self._ncols)],
                         shape=(self._ncols, self._nrows))

    def hstack(self, other):
        if self._nrows != other._nrows:
            raise ValueError("row count mismatch")
        return IntMatrix([ra + rb for ra, rb in zip(self._data, other._data)],
                         shape=(self._nrows, self._ncols + other._ncols))

    def vstack(self, other):
        if self._ncols != other._ncols:
            raise ValueError("column count mismatch")
        return IntMatrix(self._data + other._data,
                         shape=(self._nrows + other._nrows, self._ncols))

    def submatrix_columns(self, indices):
        return IntMatrix([[row[j] for j in indices] for row in self._data],
                         shape=(self._nrows, len(indices)))

    def is_zero(self):
        return all(x == 0 for row in self._data for x in row)

    def is_identity(self):
        return (self._nrows == self._ncols
                and all(self._data[i][j] == (1 if i == j else 0)
                        for i in range(self._nrows)
                        for j in range(self._ncols)))

    def inverse_unimodular(self):
        """Exact inverse of a unimodular matrix."""
        dec = smith_normal_form(self)
        if self._nrows != self._ncols or len(dec.diagonal) != self._nrows \
                or any(d != 1 for d in dec.diagonal):
            raise ValueError("matrix is not unimodular")
        # U A V = I  =>  A^{-1} = V U
        return dec.V * dec.U

    def power(self, n):
        """Integer power; negative exponents via the unimodular inverse."""
        if self._nrows != self._ncols:
            raise ValueError("power of a non-square matrix")
        base = self if n >= 0 else self.inverse_unimodular()
        k = abs(n)
        result = IntMatrix.identity(self._nrows)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch: %s vs %s" % (self.shape, other.shape))


def hstack_all(matrices, nrows=None):
    """Horizontal concatenation of a list of matrices (empty list allowed)."""
    mats = list(matrices)
    if not mats:
        if nrows is None:
            raise ValueError("need nrows for an empty stack")
        return IntMatrix.zeros(nrows, 0)
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def vstack_all(matrices, ncols=None):
    mats = list(matrices)
    if not mats:
        if ncols is None:
            raise ValueError("need ncols for an empty stack")
        return IntMatrix.zeros(0, ncols)
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = D with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: tuple
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def rank(self):
        return len(self.diagonal)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    >>> smith_normal_form(IntMatrix([[2, 4], [6, 8]])).diagonal
    (2, 4)
    """
    u, d, v, uinv, vinv = smith_with_transforms(a.rows(), a.nrows, a.ncols)
    dm = IntMatrix(d, shape=a.shape)
    diag = []
    for i in range(min(a.nrows, a.ncols)):
        if dm[i, i] == 0:
            break
        diag.append(dm[i, i])
    return SmithDecomposition(
        U=IntMatrix(u, shape=(a.nrows, a.nrows)),
        D=dm,
        V=IntMatrix(v, shape=(a.ncols, a.ncols)),
        diagonal=tuple(diag),
        U_inv=IntMatrix(uinv, shape=(a.nrows, a.nrows)),
        V_inv=IntMatrix(vinv, shape=(a.ncols, a.ncols)),
    )


def rank(a: IntMatrix) -> int:
    return smith_normal_form(a).rank


def kernel(a: IntMatrix) -> IntMatrix:
    """Primitive basis of ker(A) as columns (a saturated sublattice).

    The basis columns are the trailing columns of the SNF transform V,
    hence extend to a basis of the whole domain: the kernel is returned
    as a direct summand, which is what lift/project maps need.
    """
    dec = smith_normal_form(a)
    return dec.V.submatrix_columns(range(dec.rank, a.ncols))


class _SnfSolver:
    """Precomputed SNF of a matrix for repeated exact linear solves."""

    def __init__(self, a: IntMatrix):
        self.a = a
        self.dec = smith_normal_form(a)

    def solve_vector(self, b):
        """Integer x with A x = b, or None."""
        if len(b) != self.a.nrows:
            raise ValueError("rhs length mismatch")
        dec = self.dec
        y = dec.U.apply(tuple(b))
        x = [0] * self.a.ncols
        for i in range(self.a.nrows):
            if i < dec.rank:
                d = dec.diagonal[i]
                if y[i] % d:
                    return None
                if i < self.a.ncols:
                    x[i] = y[i] // d
            elif y[i] != 0:
                return None
        return dec.V.apply(tuple(x))

    def solve_matrix(self, b: IntMatrix):
        """Integer X with A X = B, or None."""
        cols = []
        for j in range(b.ncols):
            x = self.solve_vector(b.column(j))
            if x is None:
                return None
            cols.append(x)
        return IntMatrix.from_columns(cols, nrows=self.a.ncols)


def solve(a: IntMatrix, b: IntMatrix):
    """Integer solution X of A X = B, or None when none exists."""
    return _SnfSolver(a).solve_matrix(b)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A basis of the lattice spanned by the columns of ``gens``."""
    dec = smith_normal_form(gens)
    cols = []
    for i in range(dec.rank):
        col = dec.U_inv.column(i)
        d = dec.diagonal[i]
        cols.append(tuple(d * x for x in col))
    return IntMatrix.from_columns(cols, nrows=gens.nrows)


def preimage_lattice(m: IntMatrix, lat: IntMatrix) -> IntMatrix:
    """Generators of {x : M x in columnspan(lat)}.

    ``lat`` columns live in the codomain of M.  The result generates the
    full preimage sublattice of the domain (not merely a finite-index
    subgroup of it).
    """
    if m.nrows != lat.nrows:
        raise ValueError("codomain mismatch")
    block = m.hstack(lat)
    ker = kernel(block)
    top = IntMatrix([ker.row(i) for i in range(m.ncols)],
                    shape=(m.ncols, ker.ncols))
    return lattice_basis(top)


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group in canonical form.

    ``torsion`` entries are >= 2 and divisibility-sorted, so two values
    compare equal exactly when the groups are isomorphic.

    >>> FgAbGroup(1, (2,)).render()
    'Z (+) Z/2'
    """

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if i and self.torsion[i] % self.torsion[i - 1]:
                raise ValueError("torsion must form a divisibility chain")

    @property
    def rank(self):
        return self.free_rank

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self):
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def direct_sum(self, other):
        divisors = ([0] * (self.free_rank + other.free_rank)
                    + list(self.torsion) + list(other.torsion))
        return group_from_divisors(divisors)

    def render(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()


def group_from_divisors(divisors):
    """FgAbGroup from arbitrary cyclic orders (0 = infinite, 1 = trivial).

    >>> group_from_divisors([0, 6, 4]).render()
    'Z (+) Z/2 (+) Z/12'
    """
    free = sum(1 for d in divisors if d == 0)
    torsion = sorted(abs(d) for d in divisors if abs(d) >= 2)
    # Merge into a divisibility chain via repeated gcd/lcm exchanges.
    changed = True
    while changed:
        changed = False
        for i in range(len(torsion) - 1):
            a, b = torsion[i], torsion[i + 1]
            if b % a:
                g = gcd(a, b)
                torsion[i], torsion[i + 1] = g, a * b // g
                changed = True
        torsion.sort()
    torsion = [t for t in torsion if t > 1]
    return FgAbGroup(free, tuple(torsion))


def element_order(group: FgAbGroup, coords):
    """Order of the element with the given canonical coordinates.

    Returns 0 for infinite order, matching the Z/0 = Z convention.
    """
    if len(coords) != group.ngens:
        raise ValueError("coordinate length mismatch")
    if any(coords[i] for i in range(group.free_rank)):
        return 0
    # lcm of t / gcd(t, c) over torsion coordinates
    n = 1
    for t, c in zip(group.torsion, coords[group.free_rank:]):
        o = t // gcd(t, c % t) if c % t else 1
        n = n * o // gcd(n, o)
    return n


class Subquotient:
    """A subquotient Z/B of an ambient free module Z^n.

    ``cycle_gens`` columns generate Z, ``boundary_gens`` columns generate
    B with B contained in Z.  The quotient is presented in canonical form
    with generator order (free part first, then torsion ascending), and
    ``lift``/``project`` translate between canonical coordinates and
    ambient vectors.
    """

    def __init__(self, cycles: IntMatrix, boundaries: IntMatrix):
        if cycles.nrows != boundaries.nrows:
            raise ValueError("ambient rank mismatch")
        self.ambient_rank = cycles.nrows
        zb = lattice_basis(cycles)
        self._zsolver = _SnfSolver(zb)
        y = self._zsolver.solve_matrix(boundaries)
        if y is None:
            raise ValueError("boundary not contained in cycles")
        self.cycle_gens = zb
        self.boundary_gens = lattice_basis(boundaries)
        dec = smith_normal_form(y)
        self._gen_change = dec.U  # presentation coords = U @ (Z-coords)
        k = zb.ncols
        diag = dec.diagonal
        free_idx = list(range(dec.rank, k))
        torsion_idx = [i for i in range(dec.rank) if diag[i] >= 2]
        self._free_idx = free_idx
        self._torsion_idx = torsion_idx
        self.quotient = FgAbGroup(len(free_idx),
                                  tuple(diag[i] for i in torsion_idx))
        g = zb * dec.U_inv
        self._lift_matrix = g.submatrix_columns(free_idx + torsion_idx)

    @property
    def lift_matrix(self) -> IntMatrix:
        """Columns are ambient representatives of the canonical generators."""
        return self._lift_matrix

    def lift(self, coords):
        """Ambient representative of the element with canonical coordinates."""
        if len(coords) != self.quotient.ngens:
            raise ValueError("coordinate length mismatch")
        return self._lift_matrix.apply(tuple(coords))

    def contains(self, vector):
        return self._zsolver.solve_vector(tuple(vector)) is not None

    def project(self, vector):
        """Canonical coordinates of the class of an ambient vector in Z."""
        c = self._zsolver.solve_vector(tuple(vector))
        if c is None:
            raise ValueError("vector not contained in the cycle span")
        w = self._gen_change.apply(c)
        free = [w[i] for i in self._free_idx]
        tors = [w[i] % self.quotient.torsion[k]
                for k, i in enumerate(self._torsion_idx)]
        return tuple(free + tors)

    def project_matrix(self, mat: IntMatrix) -> IntMatrix:
        """Columnwise project: ambient columns to canonical coordinates."""
        return IntMatrix.from_columns(
            [self.project(mat.column(j)) for j in range(mat.ncols)],
            nrows=self.quotient.ngens)

    def is_zero_class(self, vector):
        return all(c == 0 for c in self.project(vector))

    def __repr__(self):
        return "Subquotient(ambient=%d, quotient=%s)" % (
            self.ambient_rank, self.quotient.render())


def subquotient(cycles: IntMatrix, boundaries: IntMatrix) -> Subquotient:
    """Present Z/B for column-generated Z and B with B contained in Z."""
    return Subquotient(cycles, boundaries)


def cokernel(a: IntMatrix) -> Subquotient:
    """Z^rows / im(A), presented with canonical generator expressions."""
    return Subquotient(IntMatrix.identity(a.nrows), a)


def cokernel_group(a: IntMatrix) -> FgAbGroup:
    """Isomorphism type of Z^rows / im(A)."""
    dec = smith_normal_form(a)
    divisors = list(dec.diagonal) + [0] * (a.nrows - dec.rank)
    return group_from_divisors(divisors)
