"""A 4n-parametric family of 4n-dimensional Lie algebras with Norden metrics.

The basis X_1, ..., X_4n splits into blocks of four.  Block alpha carries four
rational parameters and six bracket relations; brackets across blocks vanish.
The almost complex structure J rotates each block (X_a, X_b, X_c, X_d) by
J X_a = X_c, J X_b = X_d, J X_c = -X_a, J X_d = -X_b, and the metric is
diag(+1, +1, -1, -1) per block, which makes (J, g) an almost Norden pair.

Internally all indices are 0-based; check witnesses and anything that reaches
a report use the conventional 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .tensor import LOWER, ONE, UPPER, ZERO, DenseTensor, TensorBuilder

NOT_KILLING_ERROR = "metric is not Killing; use Koszul oracle"


@dataclass(frozen=True)
class ParameterVector:
    """The 4n rational constants steering the family, one quadruple per block."""

    n: int
    lam: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.lam) != 4 * self.n:
            raise ValueError("need exactly 4n parameters")

    @classmethod
    def of(cls, n: int, values: Sequence[Fraction | int | str]) -> "ParameterVector":
        return cls(n, tuple(Fraction(v) for v in values))

    def block(self, alpha: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Quadruple of block alpha (1-based), in flat parameter order."""
        if not 1 <= alpha <= self.n:
            raise ValueError("block index out of range")
        b = 4 * (alpha - 1)
        return self.lam[b], self.lam[b + 1], self.lam[b + 2], self.lam[b + 3]

    def scaled(self, c: Fraction | int) -> "ParameterVector":
        c = Fraction(c)
        return ParameterVector(self.n, tuple(c * v for v in self.lam))

    @property
    def dim(self) -> int:
        return 4 * self.n


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class StructureConstants:
    """Structure constants C of a bracket, [X_i, X_j] = sum_k C(i,j,k) X_k.

    Stored as a (1,2) tensor with layout [(k, i, j)]; antisymmetry in (i, j)
    is enforced at construction.
    """

    dim: int
    tensor: DenseTensor

    def __post_init__(self) -> None:
        t = self.tensor
        if t.dim != self.dim or t.variance != (UPPER, LOWER, LOWER):
            raise ValueError("structure constants must form a (1,2) tensor")
        for (k, i, j), value in t.nonzero_items():
            if t[(k, j, i)] != -value:
                raise ValueError("structure constants must be antisymmetric in the pair slots")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Iterable[tuple[int, Fraction]]],
    ) -> "StructureConstants":
        """Build from brackets given for pairs (i, j); the flips are filled in."""
        out = TensorBuilder(dim, (UPPER, LOWER, LOWER))
        for (i, j), terms in brackets.items():
            if i == j:
                raise ValueError("a bracket of a vector with itself must be zero")
            for k, value in terms:
                out.add((k, i, j), Fraction(value))
                out.add((k, j, i), -Fraction(value))
        return cls(dim, out.build())

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.tensor[(k, i, j)]

    def bracket(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Components of [X_i, X_j]."""
        return tuple(self.tensor[(k, i, j)] for k in range(self.dim))

    @cached_property
    def bracket_map(self) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        """Nonzero bracket expansions, keyed by the basis pair."""
        rows: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for (k, i, j), value in self.tensor.nonzero_items():
            rows.setdefault((i, j), []).append((k, value))
        return {pair: tuple(terms) for pair, terms in rows.items()}

    def with_bracket_entry_added(self, i: int, j: int, k: int, value: Fraction) -> "StructureConstants":
        """Copy with C(i,j,k) += value and the antisymmetric counterpart."""
        out = TensorBuilder(self.dim, (UPPER, LOWER, LOWER))
        for idx, v in self.tensor.nonzero_items():
            out.add(idx, v)
        out.add((k, i, j), Fraction(value))
        out.add((k, j, i), -Fraction(value))
        return StructureConstants(self.dim, out.build())


def build_brackets(p: ParameterVector) -> StructureConstants:
    """Structure constants of the family member with parameters p.

    Within block alpha with basis (e1, e2, e3, e4) and parameters
    (l1, l2, l3, l4) the six generating brackets are

        [e1, e3] = l2 e2 + l4 e4        [e3, e4] = -l4 e1 + l3 e2
        [e2, e4] = l1 e1 + l3 e3        [e4, e1] =  l1 e2 + l4 e3
        [e2, e3] = -l2 e1 - l3 e4       [e2, e1] = -l2 e3 + l1 e4

    and everything else, including every cross-block bracket, vanishes.
    """
    brackets: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for alpha in range(p.n):
        b = 4 * alpha
        e1, e2, e3, e4 = b, b + 1, b + 2, b + 3
        l1, l2, l3, l4 = p.lam[b : b + 4]
        brackets[(e1, e3)] = [(e2, l2), (e4, l4)]
        brackets[(e2, e4)] = [(e1, l1), (e3, l3)]
        brackets[(e2, e3)] = [(e1, -l2), (e4, -l3)]
        brackets[(e3, e4)] = [(e1, -l4), (e2, l3)]
        brackets[(e4, e1)] = [(e2, l1), (e3, l4)]
        brackets[(e2, e1)] = [(e3, -l2), (e4, l1)]
    return StructureConstants.from_brackets(p.dim, brackets)


def _compose(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    # endomorphism composition (a b)^i_j = a^i_m b^m_j
    out = TensorBuilder(a.dim, (UPPER, LOWER))
    b_by_upper: dict[int, list[tuple[int, Fraction]]] = {}
    for (m, j), value in b.nonzero_items():
        b_by_upper.setdefault(m, []).append((j, value))
    for (i, m), av in a.nonzero_items():
        for j, bv in b_by_upper.get(m, ()):
            out.add((i, j), av * bv)
    return out.build()


@dataclass(frozen=True)
class AlmostNordenStructure:
    """An almost complex structure with a compatible split-signature metric.

    Construction enforces J^2 = -Id, symmetry of g, the defining
    anti-isometry g(Jx, Jy) = -g(x, y), and that metric_inv inverts metric.
    """

    dim: int
    j_tensor: DenseTensor
    metric: DenseTensor
    metric_inv: DenseTensor

    def __post_init__(self) -> None:
        J, g, g_inv = self.j_tensor, self.metric, self.metric_inv
        if J.dim != self.dim or J.variance != (UPPER, LOWER):
            raise ValueError("J must be a (1,1) tensor")
        if g.dim != self.dim or g.variance != (LOWER, LOWER):
            raise ValueError("metric must be a (0,2) tensor")
        if g_inv.dim != self.dim or g_inv.variance != (UPPER, UPPER):
            raise ValueError("inverse metric must be a (2,0) tensor")
        if _compose(J, J) != DenseTensor.identity(self.dim).scale(-1):
            raise ValueError("J squared must be minus the identity")
        for (i, j), value in g.nonzero_items():
            if g[(j, i)] != value:
                raise ValueError("metric must be symmetric")
        if not _inverts(g_inv, g):
            raise ValueError("metric_inv does not invert metric")
        if not _anti_isometry(J, g):
            raise ValueError("metric must satisfy g(Jx, Jy) = -g(x, y)")

    def apply_j(self, vector: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        for (k, j), value in self.j_tensor.nonzero_items():
            if vector[j]:
                out[k] += value * vector[j]
        return tuple(out)


def _inverts(g_inv: DenseTensor, g: DenseTensor) -> bool:
    dim = g.dim
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (j, k), value in g.nonzero_items():
        rows.setdefault(j, []).append((k, value))
    product = TensorBuilder(dim, (UPPER, LOWER))
    for (i, j), value in g_inv.nonzero_items():
        for k, gv in rows.get(j, ()):
            product.add((i, k), value * gv)
    return product.build() == DenseTensor.identity(dim)


def _anti_isometry(J: DenseTensor, g: DenseTensor) -> bool:
    dim = g.dim
    cols: dict[int, list[tuple[int, Fraction]]] = {}
    for (m, i), value in J.nonzero_items():
        cols.setdefault(i, []).append((m, value))
    for i in range(dim):
        for j in range(dim):
            total = ZERO
            for m, jv1 in cols.get(i, ()):
                for q, jv2 in cols.get(j, ()):
                    gv = g[(m, q)]
                    if gv:
                        total += jv1 * jv2 * gv
            if total != -g[(i, j)]:
                return False
    return True


def build_structure(n: int) -> AlmostNordenStructure:
    """The block-diagonal almost Norden structure shared by all family members."""
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = 4 * n
    j = TensorBuilder(dim, (UPPER, LOWER))
    diag: list[Fraction] = []
    for alpha in range(n):
        b = 4 * alpha
        j.set((b + 2, b), ONE)
        j.set((b + 3, b + 1), ONE)
        j.set((b, b + 2), -ONE)
        j.set((b + 1, b + 3), -ONE)
        diag += [ONE, ONE, -ONE, -ONE]
    g = DenseTensor.diagonal(dim, diag, (LOWER, LOWER))
    g_inv = DenseTensor.diagonal(dim, diag, (UPPER, UPPER))  # diag entries are +-1
    return AlmostNordenStructure(dim, j.build(), g, g_inv)


def lowered_brackets(
    C: StructureConstants, g: DenseTensor
) -> dict[tuple[int, int], dict[int, Fraction]]:
    # maps (i, j) -> {k: g([X_i, X_j], X_k)} keeping only nonzero values
    g_rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (m, k), value in g.nonzero_items():
        g_rows.setdefault(m, []).append((k, value))
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), terms in C.bracket_map.items():
        row: dict[int, Fraction] = {}
        for m, coeff in terms:
            for k, gv in g_rows.get(m, ()):
                row[k] = row.get(k, ZERO) + coeff * gv
        out[(i, j)] = {k: v for k, v in row.items() if v}
    return out


def jacobi_check(C: StructureConstants) -> CheckResult:
    """Does the bracket satisfy the Jacobi identity?

    Returns the first violating triple (1-based) as witness on failure.
    """
    dim = C.dim
    rows = C.bracket_map
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                acc: dict[int, Fraction] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, coeff in rows.get((a, b), ()):
                        for l, inner in rows.get((m, c), ()):
                            acc[l] = acc.get(l, ZERO) + coeff * inner
                if any(acc.values()):
                    return CheckResult(False, (i + 1, j + 1, k + 1))
    return CheckResult(True)


def killing_check(C: StructureConstants, g: DenseTensor) -> CheckResult:
    """Is g a Killing metric, g([X,Y],Z) + g([X,Z],Y) = 0 on all basis triples?"""
    dim = C.dim
    lowered = lowered_brackets(C, g)
    for i in range(dim):
        for j in range(dim):
            row_ij = lowered.get((i, j))
            for k in range(dim):
                total = ZERO
                if row_ij:
                    total += row_ij.get(k, ZERO)
                row_ik = lowered.get((i, k))
                if row_ik:
                    total += row_ik.get(j, ZERO)
                if total:
                    return CheckResult(False, (i + 1, j + 1, k + 1))
    return CheckResult(True)


def orthogonality_check(C: StructureConstants, g: DenseTensor) -> CheckResult:
    """Is every bracket [X_i, X_j] g-orthogonal to both of its arguments?"""
    lowered = lowered_brackets(C, g)
    for (i, j), row in lowered.items():
        if row.get(i) or row.get(j):
            return CheckResult(False, (i + 1, j + 1))
    return CheckResult(True)


@dataclass(frozen=True)
class Connection:
    """A linear connection on left-invariant fields, nabla_{X_i} X_j = Gamma(i,j,k) X_k.

    The coefficient tensor is (1,2) with layout [(k, i, j)].
    """

    dim: int
    gamma: DenseTensor

    def __post_init__(self) -> None:
        if self.gamma.dim != self.dim or self.gamma.variance != (UPPER, LOWER, LOWER):
            raise ValueError("connection coefficients must form a (1,2) tensor")

    @cached_property
    def rows(self) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        """Nonzero coefficients of nabla_{X_i} X_j, keyed by (i, j)."""
        rows: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for (k, i, j), value in self.gamma.nonzero_items():
            rows.setdefault((i, j), []).append((k, value))
        return {pair: tuple(terms) for pair, terms in rows.items()}

    def derivative(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Components of nabla_{X_i} X_j."""
        return tuple(self.gamma[(k, i, j)] for k in range(self.dim))


def levi_civita_killing(C: StructureConstants, g: DenseTensor) -> Connection:
    """Levi-Civita connection of a Killing metric: nabla_X Y = [X, Y] / 2.

    Refuses input whose metric is not Killing, since the half-bracket formula
    is only valid there.
    """
    if not killing_check(C, g).ok:
        raise ValueError(NOT_KILLING_ERROR)
    return Connection(C.dim, C.tensor.scale(Fraction(1, 2)))


def levi_civita_koszul(C: StructureConstants, g: DenseTensor, g_inv: DenseTensor) -> Connection:
    """Levi-Civita connection from the Koszul formula, for any left-invariant metric.

    2 g(nabla_{X_i} X_j, X_k)
        = g([X_i, X_j], X_k) - g([X_j, X_k], X_i) + g([X_k, X_i], X_j).
    """
    if not _inverts(g_inv, g):
        raise ValueError("metric is degenerate or g_inv does not invert it")
    dim = C.dim
    lowered = lowered_brackets(C, g)
    g_inv_rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, m), value in g_inv.nonzero_items():
        g_inv_rows.setdefault(m, []).append((k, value))
    gamma = TensorBuilder(dim, (UPPER, LOWER, LOWER))
    half = Fraction(1, 2)
    for i in range(dim):
        for j in range(dim):
            row_ij = lowered.get((i, j), {})
            for m in range(dim):
                total = row_ij.get(m, ZERO)
                row_jm = lowered.get((j, m))
                if row_jm:
                    total -= row_jm.get(i, ZERO)
                row_mi = lowered.get((m, i))
                if row_mi:
                    total += row_mi.get(j, ZERO)
                if not total:
                    continue
                for k, gv in g_inv_rows.get(m, ()):
                    gamma.add((k, i, j), half * gv * total)
    return Connection(dim, gamma.build())


def torsion_free(conn: Connection, C: StructureConstants) -> bool:
    """Gamma(i,j,.) - Gamma(j,i,.) = C(i,j,.) for all pairs."""
    dim = conn.dim
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                if conn.gamma[(k, i, j)] - conn.gamma[(k, j, i)] != C.tensor[(k, i, j)]:
                    return False
    return True


def metric_compatible(conn: Connection, g: DenseTensor) -> bool:
    """g(nabla_{X_h} X_i, X_j) + g(X_i, nabla_{X_h} X_j) = 0 for all triples."""
    dim = conn.dim
    rows = conn.rows
    for h in range(dim):
        for i in range(dim):
            for j in range(dim):
                total = ZERO
                for k, gv in rows.get((h, i), ()):
                    m = g[(k, j)]
                    if m:
                        total += gv * m
                for k, gv in rows.get((h, j), ()):
                    m = g[(i, k)]
                    if m:
                        total += gv * m
                if total:
                    return False
    return True
