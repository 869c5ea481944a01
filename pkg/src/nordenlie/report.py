"""Characterization reports: run the full pipeline and assemble the results.

The JSON layout is versioned ("norden-report/1") and deterministic: keys are
emitted sorted, rationals are rendered as exact "p/q" strings, and component
lists hold only nonzero canonical entries with the generating symmetry named.
All check fields are tri-state strings: "pass", "fail" or "skipped".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from . import curvature as cv
from . import oracles as oc
from .family import (
    ParameterVector,
    build_brackets,
    build_structure,
    jacobi_check,
    killing_check,
    levi_civita_killing,
    levi_civita_koszul,
    orthogonality_check,
)
from .tensor import DenseTensor, TensorBuilder

SCHEMA_VERSION = "norden-report/1"

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

FAULT_FLIP_F = "flip-f-component"
KNOWN_FAULTS = (FAULT_FLIP_F,)


def _tri(ok: bool) -> str:
    return PASS if ok else FAIL


def _frac(value: Fraction) -> str:
    return str(value)


def _index1(index: tuple[int, ...]) -> list[int]:
    return [i + 1 for i in index]


# ---------------------------------------------------------------------------
# canonical component listings (symmetry-derived entries omitted)
# ---------------------------------------------------------------------------


def canonical_f_components(F: DenseTensor) -> list[tuple[tuple[int, int, int], Fraction]]:
    # representative: j <= k under F[i,j,k] = F[i,k,j]
    return sorted(
        ((i, j, k), v) for (i, j, k), v in F.nonzero_items() if j <= k
    )


def canonical_r_components(
    R: DenseTensor,
) -> list[tuple[tuple[int, int, int, int], Fraction]]:
    # representative of the 8-element orbit: i < j, k < s, (i,j) <= (k,s)
    return sorted(
        ((i, j, k, s), v)
        for (i, j, k, s), v in R.nonzero_items()
        if i < j and k < s and (i, j) <= (k, s)
    )


def canonical_ricci_components(
    ricci: DenseTensor,
) -> list[tuple[tuple[int, int], Fraction]]:
    return sorted(((i, j), v) for (i, j), v in ricci.nonzero_items() if i <= j)


def canonical_n_pairs(
    N: DenseTensor,
) -> list[tuple[tuple[int, int], list[tuple[int, Fraction]]]]:
    # N is (1,2)-valued; group by the antisymmetric pair, keep i < j
    grouped: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (k, i, j), v in N.nonzero_items():
        if i < j:
            grouped.setdefault((i, j), []).append((k, v))
    return sorted((pair, sorted(vec)) for pair, vec in grouped.items())


def corrupt_fundamental_tensor(F: DenseTensor) -> DenseTensor:
    """Testing hook: return F with one component deliberately wrong."""
    out = TensorBuilder(F.dim, F.variance)
    items = sorted(F.nonzero_items())
    for index, value in items:
        out.set(index, value)
    if items:
        index, value = items[0]
        out.set(index, -value)
    else:
        out.set((0, 1, 1), Fraction(1))
    return out.build()


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def characterize_family(
    n: int, lam: Sequence[Fraction], fault: str | None = None
) -> dict:
    """Run every computation on one family member and collect the results."""
    if fault is not None and fault not in KNOWN_FAULTS:
        raise ValueError(f"unknown fault {fault!r}; known: {', '.join(KNOWN_FAULTS)}")
    p = ParameterVector.of(n, lam)
    C = build_brackets(p)
    structure = build_structure(n)
    g, g_inv, J = structure.metric, structure.metric_inv, structure.j_tensor
    dim = p.dim

    jacobi = jacobi_check(C)
    killing = killing_check(C, g)
    orthogonality = orthogonality_check(C, g)

    conn = levi_civita_killing(C, g)
    conn_koszul = levi_civita_koszul(C, g, g_inv)
    connection_agree = conn.gamma == conn_koszul.gamma

    F = cv.fundamental_tensor(J, g, conn)
    if fault == FAULT_FLIP_F:
        F = corrupt_fundamental_tensor(F)
    theta = cv.lee_form(F, g_inv)
    cls = cv.classify(F, theta, J, g)
    npkg = cv.nijenhuis_package(C, structure, F)
    pkg = cv.curvature_package(C, structure, conn)
    R, ricci, tau = pkg.riemann, pkg.ricci, pkg.scalar

    S = oc.parameter_square_norm(p)
    iso = cv.isotropic_kahler_predicates(npkg.nabla_j_norm_sq, npkg.norm_sq, tau, S)
    ccv = cv.constant_curvature_predicates(R, g, J)

    agreement = {
        "connection": _tri(connection_agree),
        "F_bracket_form": _tri(F == oc.bracket_fundamental_tensor(C, J, g)),
        "F_closed_form": _tri(F == oc.fundamental_tensor_table(p)),
        "N_closed_form": _tri(npkg.tensor == oc.nijenhuis_table(p)),
        "R_bracket_form": _tri(R == oc.bracket_curvature_tensor(C, g)),
        "R_closed_form": _tri(R == oc.curvature_table(p)),
        "ricci_closed_form": _tri(ricci == oc.ricci_table(p)),
        "scalar_closed_form": _tri(tau == oc.scalar_curvature_closed_form(p)),
        "sectional_closed_form": _tri(
            all(
                pkg.sectional_basic[pair].value == want
                and not pkg.sectional_basic[pair].degenerate
                for pair, want in oc.sectional_closed_form(p).items()
            )
        ),
        "norms_closed_form": _tri(
            npkg.nabla_j_norm_sq == oc.nabla_j_norm_sq_closed_form(p)
            and npkg.norm_sq == oc.nijenhuis_norm_sq_closed_form(p)
            and npkg.norm_sq == -8 * npkg.nabla_j_norm_sq
        ),
    }

    member_of = [
        name
        for name, flag in (
            ("W0", cls.in_w0),
            ("W1", cls.in_w1),
            ("W2", cls.in_w2),
            ("W3", cls.in_w3),
        )
        if flag
    ]

    sectional_rows = []
    for alpha in range(n):
        base = 4 * alpha
        for a in range(4):
            for b in range(a + 1, 4):
                i, j = base + a, base + b
                entry = pkg.sectional_basic[(i, j)]
                sectional_rows.append(
                    {
                        "plane": [i + 1, j + 1],
                        "type": entry.plane.value,
                        "degenerate": entry.degenerate,
                        "value": None if entry.value is None else _frac(entry.value),
                    }
                )

    bisectional_rows = []
    for alpha in range(n):
        base = 4 * alpha
        x = cv.basis_vector(dim, base)
        y = cv.basis_vector(dim, base + 1)
        h = cv.bisectional_curvature(R, g, J, x, y)
        bisectional_rows.append(
            {
                "block": alpha + 1,
                "arguments": [base + 1, base + 2],
                "defined": h.defined,
                "value": None if h.value is None else _frac(h.value),
            }
        )

    holomorphic_identity = oc.constant_holomorphic_parameter_identity(p)

    report = {
        "schema": SCHEMA_VERSION,
        "input": {
            "n": n,
            "dimension": dim,
            "lambda": [_frac(v) for v in p.lam],
        },
        "structural": {
            "jacobi": _tri(bool(jacobi)),
            "killing": _tri(bool(killing)),
            "orthogonality": _tri(bool(orthogonality)),
        },
        "classification": {
            "F_nonzero": cls.f_nonzero,
            "in_W0": cls.in_w0,
            "in_W1": cls.in_w1,
            "in_W2": cls.in_w2,
            "in_W3": cls.in_w3,
            "member_of": member_of,
            "lee_form": [_frac(theta[(k,)]) for k in range(dim)],
            "lee_form_zero": theta.is_zero(),
        },
        "invariants": {
            "parameter_norm_sq": _frac(S),
            "nabla_J_norm_sq": _frac(npkg.nabla_j_norm_sq),
            "nijenhuis_norm_sq": _frac(npkg.norm_sq),
            "scalar_curvature": _frac(tau),
            "isotropic_kahler": iso.nabla_j_isotropic,
        },
        "tensors": {
            "F": {
                "symmetry": "F[i,j,k] = F[i,k,j]",
                "components": [
                    {"index": _index1(idx), "value": _frac(v)}
                    for idx, v in canonical_f_components(F)
                ],
            },
            "N": {
                "symmetry": "N[j,i] = -N[i,j]",
                "components": [
                    {
                        "pair": _index1(pair),
                        "vector": [
                            {"basis": k + 1, "value": _frac(v)} for k, v in vec
                        ],
                    }
                    for pair, vec in canonical_n_pairs(npkg.tensor)
                ],
            },
            "R": {
                "symmetry": "R[i,j,k,s] = R[k,s,i,j] = -R[j,i,k,s] = -R[i,j,s,k]",
                "components": [
                    {"index": _index1(idx), "value": _frac(v)}
                    for idx, v in canonical_r_components(R)
                ],
            },
            "ricci": {
                "symmetry": "ricci[i,j] = ricci[j,i]",
                "components": [
                    {"index": _index1(idx), "value": _frac(v)}
                    for idx, v in canonical_ricci_components(ricci)
                ],
            },
        },
        "sectional": {
            "basic_planes": sectional_rows,
            "bisectional": bisectional_rows,
        },
        "theorems": {
            "locally_symmetric": _tri(pkg.locally_symmetric),
            "conformally_flat": _tri(pkg.weyl.is_zero()),
            "quasi_kaehler_w3": _tri(cls.in_w3 and theta.is_zero()),
            "isotropy_equivalence": {
                "agree": _tri(iso.all_agree),
                "isotropic_kahler": iso.nabla_j_isotropic,
                "scalar_flat": iso.scalar_flat,
                "nijenhuis_isotropic": iso.nijenhuis_isotropic,
                "parameter_null": iso.parameter_null,
            },
            "constant_curvature": {
                "holomorphic": ccv.constant_holomorphic,
                "totally_real": ccv.constant_totally_real,
                "holomorphic_matches_parameter_identity": _tri(
                    ccv.constant_holomorphic == holomorphic_identity
                ),
                "totally_real_matches_flatness": _tri(
                    ccv.constant_totally_real == R.is_zero()
                ),
            },
        },
        "oracle_agreement": agreement,
    }
    return report


def report_failed(report: dict) -> bool:
    """Exit-status rule: structural checks and oracle agreements decide."""
    sections = (report["structural"], report["oracle_agreement"])
    return any(value == FAIL for section in sections for value in section.values())


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _vector_expr(vec: list[dict]) -> str:
    parts = []
    for term in vec:
        value = Fraction(term["value"])
        coeff = f"{abs(value)}*X{term['basis']}"
        if not parts:
            parts.append(coeff if value > 0 else f"-{coeff}")
        else:
            parts.append(f"+ {coeff}" if value > 0 else f"- {coeff}")
    return " ".join(parts) if parts else "0"


def render_text(report: dict) -> str:
    lines: list[str] = []
    add = lines.append
    inp = report["input"]
    add(report["schema"])
    add(f"input: n = {inp['n']}, dimension = {inp['dimension']}")
    add("lambda = (" + ", ".join(inp["lambda"]) + ")")

    add("")
    add("structural checks")
    for name in ("jacobi", "killing", "orthogonality"):
        add(f"  {name}: {report['structural'][name]}")

    cls = report["classification"]
    add("")
    add("classification")
    add(f"  F nonzero: {'yes' if cls['F_nonzero'] else 'no'}")
    add("  member of: " + (", ".join(cls["member_of"]) or "(none)"))
    add(f"  lee form zero: {'yes' if cls['lee_form_zero'] else 'no'}")

    inv = report["invariants"]
    add("")
    add("invariants")
    add(f"  parameter square norm S = {inv['parameter_norm_sq']}")
    add(f"  square norm of nabla J = {inv['nabla_J_norm_sq']}")
    add(f"  square norm of N = {inv['nijenhuis_norm_sq']}")
    add(f"  scalar curvature = {inv['scalar_curvature']}")
    add(f"  isotropic Kaehler: {'yes' if inv['isotropic_kahler'] else 'no'}")

    tensors = report["tensors"]
    for name in ("F", "R"):
        table = tensors[name]
        add("")
        add(f"{name} components (nonzero, up to {table['symmetry']})")
        for entry in table["components"]:
            idx = ",".join(str(i) for i in entry["index"])
            add(f"  {name}[{idx}] = {entry['value']}")
        if not table["components"]:
            add("  (all zero)")

    table = tensors["N"]
    add("")
    add(f"N components (nonzero, up to {table['symmetry']})")
    for entry in table["components"]:
        idx = ",".join(str(i) for i in entry["pair"])
        add(f"  N[{idx}] = {_vector_expr(entry['vector'])}")
    if not table["components"]:
        add("  (all zero)")

    table = tensors["ricci"]
    add("")
    add(f"ricci components (nonzero, up to {table['symmetry']})")
    for entry in table["components"]:
        idx = ",".join(str(i) for i in entry["index"])
        add(f"  ricci[{idx}] = {entry['value']}")
    if not table["components"]:
        add("  (all zero)")

    add("")
    add("sectional curvatures of basic planes")
    for row in report["sectional"]["basic_planes"]:
        i, j = row["plane"]
        value = "degenerate" if row["degenerate"] else row["value"]
        add(f"  k[{i},{j}] = {value} ({row['type']})")
    for row in report["sectional"]["bisectional"]:
        i, j = row["arguments"]
        value = row["value"] if row["defined"] else "undefined"
        add(f"  bisectional h(X{i}, X{j}) = {value} (block {row['block']})")

    thm = report["theorems"]
    add("")
    add("theorem checks")
    add(f"  locally symmetric (nabla R = 0): {thm['locally_symmetric']}")
    add(f"  conformally flat (Weyl = 0): {thm['conformally_flat']}")
    add(f"  quasi-Kaehler class W3: {thm['quasi_kaehler_w3']}")
    iso = thm["isotropy_equivalence"]
    flags = ", ".join(
        f"{key}={'yes' if iso[key] else 'no'}"
        for key in (
            "isotropic_kahler",
            "scalar_flat",
            "nijenhuis_isotropic",
            "parameter_null",
        )
    )
    add(f"  isotropy equivalence: {iso['agree']} ({flags})")
    cc = thm["constant_curvature"]
    add(
        "  constant holomorphic sectional curvature: "
        f"{'yes' if cc['holomorphic'] else 'no'} "
        f"(parameter identity check: {cc['holomorphic_matches_parameter_identity']})"
    )
    add(
        "  constant totally real sectional curvature: "
        f"{'yes' if cc['totally_real'] else 'no'} "
        f"(flatness check: {cc['totally_real_matches_flatness']})"
    )

    add("")
    add("oracle agreement")
    for name in sorted(report["oracle_agreement"]):
        add(f"  {name}: {report['oracle_agreement'][name]}")

    return "\n".join(lines) + "\n"
