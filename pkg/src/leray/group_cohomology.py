"""Group cohomology H^k(Z^n, M) for integer-matrix actions, n <= 2.

For n = 1 the answer is the kernel/cokernel of A - I.  For n = 2 the
torus is the classifying space, so H^k(Z^2, M) is computed as the
local-coefficient cohomology of the built-in torus triangulation with
holonomy (A1, A2).  ``recursion_check`` validates the result against
the two-step recursion through H^*(Z, M): the short exact sequence
determines the middle group only up to extension, so the check compares
free ranks exactly and torsion orders by divisibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import cohomology_groups
from .exactlinalg import (
    FgAbGroup,
    IntMatrix,
    cokernel_group,
    kernel,
    preimage_lattice,
    solve,
    subquotient,
)
from .local_systems import from_monodromy
from .simplicial import torus2


@dataclass(frozen=True)
class ZnModule:
    """Z^rank with an action of Z^n by commuting unimodular matrices."""

    rank: int
    action: tuple

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        for a in self.action:
            if a.shape != (self.rank, self.rank):
                raise ValueError("action matrix shape mismatch")
            try:
                a.inverse_unimodular()
            except ValueError:
                raise ValueError("action matrix is not unimodular") from None
        for i in range(len(self.action)):
            for j in range(i + 1, len(self.action)):
                if self.action[i] * self.action[j] != \
                        self.action[j] * self.action[i]:
                    raise ValueError("non-commuting action")

    @property
    def n(self):
        return len(self.action)


def zn_cohomology(module: ZnModule):
    """[H^0, ..., H^n] as FgAbGroup values; n must be 1 or 2.

    n = 2 goes through the torus as classifying space, which also
    resolves the extension ambiguity the recursion leaves open.
    """
    if module.n == 1:
        a = module.action[0]
        ident = IntMatrix.identity(module.rank)
        h0 = FgAbGroup(kernel(a - ident).ncols, ())
        h1 = cokernel_group(a - ident)
        return [h0, h1]
    if module.n == 2:
        x = torus2()
        system = from_monodromy(x, list(module.action),
                                fiber_rank=module.rank)
        return cohomology_groups(x, system)
    raise ValueError("only n = 1 or n = 2 is supported")


def _induced_on_kernel(a1, k):
    """Matrix of a1 restricted to the saturated sublattice spanned by k."""
    x = solve(k, a1 * k)
    if x is None:
        raise AssertionError("action does not preserve the kernel")
    return x


def _inv_on_quotient(a1, rel):
    """Invariants of the action induced by a1 on Z^m / im(rel)."""
    m = a1.nrows
    ident = IntMatrix.identity(m)
    pre = preimage_lattice(a1 - ident, rel)
    return subquotient(pre, rel).quotient


@dataclass(frozen=True)
class RecursionReport:
    """Per-degree comparison of H^k(Z^2, M) against the Z-recursion."""

    groups: tuple           # H^0..H^2 of Z^2
    coinv_ends: tuple       # Coinv_Z H^{k-1}(Z, M) for k = 0..2
    inv_ends: tuple         # Inv_Z H^k(Z, M) for k = 0..2
    rank_ok: tuple
    torsion_ok: tuple

    @property
    def ok(self):
        return all(self.rank_ok) and all(self.torsion_ok)


def recursion_check(module: ZnModule) -> RecursionReport:
    """Rank and torsion consistency of the classifying-space answer with
    the recursion through the last Z-factor.

    For each k the recursion provides a short exact sequence with ends
    Coinv_Z H^{k-1}(Z, M) and Inv_Z H^k(Z, M), where Z acts through the
    first matrix and H^*(Z, M) is taken for the second.  Free ranks add
    exactly; the middle torsion order divides the product of the ends'.
    """
    if module.n != 2:
        raise ValueError("recursion check needs n = 2")
    a1, a2 = module.action
    m = module.rank
    ident = IntMatrix.identity(m)
    groups = tuple(zn_cohomology(module))

    # H^*(Z, M) for the second factor, with the induced action of the first.
    k_basis = kernel(a2 - ident)
    a1_on_h0 = _induced_on_kernel(a1, k_basis)
    sub_ident = IntMatrix.identity(k_basis.ncols)

    inv_h0 = FgAbGroup(kernel(a1_on_h0 - sub_ident).ncols, ())
    coinv_h0 = cokernel_group(a1_on_h0 - sub_ident)
    inv_h1 = _inv_on_quotient(a1, a2 - ident)
    coinv_h1 = cokernel_group((a1 - ident).hstack(a2 - ident))

    zero = FgAbGroup(0, ())
    coinv_ends = (zero, coinv_h0, coinv_h1)   # Coinv of H^{k-1}
    inv_ends = (inv_h0, inv_h1, zero)         # Inv of H^k

    rank_ok = tuple(
        groups[k].free_rank == coinv_ends[k].free_rank + inv_ends[k].free_rank
        for k in range(3))
    torsion_ok = tuple(
        (coinv_ends[k].torsion_order() * inv_ends[k].torsion_order())
        % groups[k].torsion_order() == 0
        for k in range(3))
    return RecursionReport(groups, coinv_ends, inv_ends, rank_ok, torsion_ok)
