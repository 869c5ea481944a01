"""Independent reference computations for the block-diagonal family.

Two kinds of oracle live here: bracket-level shortcut formulas that are valid
for any Killing metric (half-bracket connection consequences), and fully
closed-form component tables in the family parameters.  The engine in
`curvature` must reproduce all of them exactly; the comparisons are wired
into the report and the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .family import ParameterVector, StructureConstants, lowered_brackets
from .tensor import LOWER, UPPER, ZERO, DenseTensor, TensorBuilder

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def parameter_square_norm(p: ParameterVector) -> Fraction:
    """Square norm of the parameter vector under the block metric (+,+,-,-)."""
    total = ZERO
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        total += l1 * l1 + l2 * l2 - l3 * l3 - l4 * l4
    return total


# ---------------------------------------------------------------------------
# Killing-metric shortcut formulas (bracket level)
# ---------------------------------------------------------------------------


def bracket_fundamental_tensor(
    C: StructureConstants, J: DenseTensor, g: DenseTensor
) -> DenseTensor:
    """F(X_i,X_j,X_k) = (g([X_i, JX_j], X_k) - g([X_i, X_j], JX_k)) / 2."""
    dim = C.dim
    lowered = lowered_brackets(C, g)
    j_cols: dict[int, list[tuple[int, Fraction]]] = {}
    for (m, j), value in J.nonzero_items():
        j_cols.setdefault(j, []).append((m, value))
    # gj[a][k] = g(X_a, J X_k)
    gj: dict[int, dict[int, Fraction]] = {}
    for (m, k), jv in J.nonzero_items():
        for a in range(dim):
            gv = g[(a, m)]
            if gv:
                gj.setdefault(a, {}).setdefault(k, ZERO)
                gj[a][k] += gv * jv
    out = TensorBuilder(dim, (LOWER, LOWER, LOWER))
    for i in range(dim):
        for j in range(dim):
            for m, jv in j_cols.get(j, ()):
                row = lowered.get((i, m))
                if row:
                    for k, gv in row.items():
                        out.add((i, j, k), HALF * jv * gv)
            for a, cv in C.bracket_map.get((i, j), ()):
                for k, gv in gj.get(a, {}).items():
                    out.add((i, j, k), -HALF * cv * gv)
    return out.build()


def bracket_curvature_tensor(C: StructureConstants, g: DenseTensor) -> DenseTensor:
    """R(X_i,X_j,X_k,X_l) = -g([X_i,X_j],[X_k,X_l]) / 4."""
    dim = C.dim
    lowered = lowered_brackets(C, g)
    out = TensorBuilder(dim, (LOWER, LOWER, LOWER, LOWER))
    for (i, j), row in lowered.items():
        for (k, l), terms in C.bracket_map.items():
            total = ZERO
            for m, cv in terms:
                v = row.get(m)
                if v:
                    total += cv * v
            if total:
                out.set((i, j, k, l), -QUARTER * total)
    return out.build()


# ---------------------------------------------------------------------------
# closed-form component tables in the parameters
# ---------------------------------------------------------------------------


def fundamental_tensor_table(p: ParameterVector) -> DenseTensor:
    """Nonzero components of F per block, completed by symmetry in the last two slots.

    The (2,1,1) and (2,3,3) entries carry the full parameter, not half of it:
    both bracket-level routes compute them that way, and the square norm
    identity for F only holds with the full values.
    """
    out = TensorBuilder(p.dim, (LOWER, LOWER, LOWER))
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        b = 4 * (alpha - 1) - 1  # so that local index 1..4 maps to b+1..b+4
        entries = (
            ((1, 2, 2), -l1),
            ((1, 4, 4), -l1),
            ((2, 1, 2), HALF * l1),
            ((2, 3, 4), HALF * l1),
            ((4, 1, 4), HALF * l1),
            ((4, 2, 3), -HALF * l1),
            ((1, 1, 2), HALF * l2),
            ((1, 3, 4), HALF * l2),
            ((2, 1, 1), -l2),
            ((2, 3, 3), -l2),
            ((3, 1, 4), -HALF * l2),
            ((3, 2, 3), HALF * l2),
            ((2, 1, 4), HALF * l3),
            ((2, 2, 3), -HALF * l3),
            ((3, 2, 2), l3),
            ((3, 4, 4), l3),
            ((4, 1, 2), -HALF * l3),
            ((4, 3, 4), -HALF * l3),
            ((1, 1, 4), -HALF * l4),
            ((1, 2, 3), HALF * l4),
            ((3, 1, 2), -HALF * l4),
            ((3, 3, 4), -HALF * l4),
            ((4, 1, 1), l4),
            ((4, 3, 3), l4),
        )
        for (i, j, k), value in entries:
            if value:
                out.set_checked((b + i, b + j, b + k), value)
                out.set_checked((b + i, b + k, b + j), value)
    return out.build()


def nijenhuis_table(p: ParameterVector) -> DenseTensor:
    """Nonzero components of N per block, completed by antisymmetry."""
    out = TensorBuilder(p.dim, (UPPER, LOWER, LOWER))
    two = Fraction(2)
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        b = 4 * (alpha - 1) - 1
        pairs = (
            ((1, 2), (two * l4, -two * l3, two * l2, -two * l1)),
            ((3, 4), (-two * l4, two * l3, -two * l2, two * l1)),
            ((1, 4), (two * l2, -two * l1, -two * l4, two * l3)),
            ((2, 3), (-two * l2, two * l1, two * l4, -two * l3)),
        )
        for (i, j), coeffs in pairs:
            for local_k, value in enumerate(coeffs, start=1):
                if value:
                    out.set_checked((b + local_k, b + i, b + j), value)
                    out.set_checked((b + local_k, b + j, b + i), -value)
    return out.build()


def curvature_table(p: ParameterVector) -> DenseTensor:
    """Nonzero components of R per block, completed by the pair symmetries.

    The generating entries are quadratic in the block parameters.  The sign
    of the (1,4,4,1) entry is fixed by cross-validation against the bracket
    form of R, the Ricci components, and the vanishing of the Weyl tensor,
    which pin it jointly; the sectional value of the (1,4) plane agrees.
    """
    out = TensorBuilder(p.dim, (LOWER, LOWER, LOWER, LOWER))
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        b = 4 * (alpha - 1) - 1
        entries = (
            ((1, 2, 2, 1), -QUARTER * (l1 * l1 + l2 * l2)),
            ((1, 3, 3, 1), QUARTER * (l2 * l2 - l4 * l4)),
            ((1, 4, 4, 1), QUARTER * (l1 * l1 - l4 * l4)),
            ((2, 3, 3, 2), QUARTER * (l2 * l2 - l3 * l3)),
            ((2, 4, 4, 2), QUARTER * (l1 * l1 - l3 * l3)),
            ((3, 4, 4, 3), QUARTER * (l3 * l3 + l4 * l4)),
            ((1, 3, 4, 1), -QUARTER * l1 * l2),
            ((2, 3, 4, 2), -QUARTER * l1 * l2),
            ((2, 1, 3, 2), QUARTER * l1 * l3),
            ((4, 1, 3, 4), -QUARTER * l1 * l3),
            ((1, 2, 3, 1), QUARTER * l1 * l4),
            ((4, 2, 3, 4), -QUARTER * l1 * l4),
            ((2, 1, 4, 2), QUARTER * l2 * l3),
            ((3, 1, 4, 3), -QUARTER * l2 * l3),
            ((1, 2, 4, 1), QUARTER * l2 * l4),
            ((3, 2, 4, 3), -QUARTER * l2 * l4),
            ((3, 1, 2, 3), QUARTER * l3 * l4),
            ((4, 1, 2, 4), QUARTER * l3 * l4),
        )
        for (i, j, k, s), value in entries:
            if not value:
                continue
            i, j, k, s = b + i, b + j, b + k, b + s
            images = (
                ((i, j, k, s), value),
                ((j, i, k, s), -value),
                ((i, j, s, k), -value),
                ((j, i, s, k), value),
                ((k, s, i, j), value),
                ((s, k, i, j), -value),
                ((k, s, j, i), -value),
                ((s, k, j, i), value),
            )
            for idx, v in images:
                out.set_checked(idx, v)
    return out.build()


def ricci_table(p: ParameterVector) -> DenseTensor:
    """Nonzero components of the Ricci tensor per block (symmetric)."""
    out = TensorBuilder(p.dim, (LOWER, LOWER))
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        b = 4 * (alpha - 1) - 1
        entries = (
            ((1, 1), -HALF * (l1 * l1 + l2 * l2 - l4 * l4)),
            ((2, 2), -HALF * (l1 * l1 + l2 * l2 - l3 * l3)),
            ((3, 3), HALF * (l2 * l2 - l3 * l3 - l4 * l4)),
            ((4, 4), HALF * (l1 * l1 - l3 * l3 - l4 * l4)),
            ((1, 2), -HALF * l3 * l4),
            ((1, 3), HALF * l1 * l3),
            ((1, 4), HALF * l2 * l3),
            ((2, 3), HALF * l1 * l4),
            ((2, 4), HALF * l2 * l4),
            ((3, 4), -HALF * l1 * l2),
        )
        for (i, j), value in entries:
            if value:
                out.set_checked((b + i, b + j), value)
                if i != j:
                    out.set_checked((b + j, b + i), value)
    return out.build()


def scalar_curvature_closed_form(p: ParameterVector) -> Fraction:
    return Fraction(-3, 2) * parameter_square_norm(p)


def sectional_closed_form(p: ParameterVector) -> dict[tuple[int, int], Fraction]:
    """Basic sectional curvatures of the six coordinate planes per block (0-based pairs)."""
    out: dict[tuple[int, int], Fraction] = {}
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        b = 4 * (alpha - 1)
        out[(b, b + 2)] = -QUARTER * (l2 * l2 - l4 * l4)
        out[(b + 1, b + 3)] = -QUARTER * (l1 * l1 - l3 * l3)
        out[(b, b + 1)] = -QUARTER * (l1 * l1 + l2 * l2)
        out[(b, b + 3)] = -QUARTER * (l1 * l1 - l4 * l4)
        out[(b + 1, b + 2)] = -QUARTER * (l2 * l2 - l3 * l3)
        out[(b + 2, b + 3)] = QUARTER * (l3 * l3 + l4 * l4)
    return out


def constant_holomorphic_parameter_identity(p: ParameterVector) -> bool:
    """Parameter-side criterion for constant holomorphic sectional curvature.

    Within each block the two holomorphic plane curvatures coincide exactly
    when l1^2 + l4^2 = l2^2 + l3^2; constancy additionally needs the common
    value to match across blocks.
    """
    values = set()
    for alpha in range(1, p.n + 1):
        l1, l2, l3, l4 = p.block(alpha)
        if l1 * l1 + l4 * l4 != l2 * l2 + l3 * l3:
            return False
        values.add(-QUARTER * (l2 * l2 - l4 * l4))
    return len(values) <= 1


def nabla_j_norm_sq_closed_form(p: ParameterVector) -> Fraction:
    return 4 * parameter_square_norm(p)


def nijenhuis_norm_sq_closed_form(p: ParameterVector) -> Fraction:
    return -32 * parameter_square_norm(p)
