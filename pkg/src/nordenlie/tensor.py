"""Dense tensors with exact rational components.

Components are stored flat, row-major over the slot order.  Constructors
produce the conventional layout (contravariant slots first, covariant slots
after), and every slot keeps its position for the lifetime of the tensor:
raising or lowering an index flips the slot's variance in place instead of
moving it.  That convention makes raise-then-lower an exact identity and
keeps component comparisons trivial.

All scalars are `fractions.Fraction`; nothing in this module ever rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

ZERO = Fraction(0)
ONE = Fraction(1)

UPPER = "u"
LOWER = "l"


def _strides(dim: int, rank: int) -> tuple[int, ...]:
    return tuple(dim ** (rank - 1 - i) for i in range(rank))


@dataclass(frozen=True)
class DenseTensor:
    """A tensor on a dim-dimensional space, all components rational."""

    dim: int
    variance: tuple[str, ...]
    components: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if any(v not in (UPPER, LOWER) for v in self.variance):
            raise ValueError("variance entries must be 'u' or 'l'")
        if len(self.components) != self.dim ** len(self.variance):
            raise ValueError("component count does not match dim and rank")

    # -- shape ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.variance)

    @property
    def contravariant_rank(self) -> int:
        return sum(1 for v in self.variance if v == UPPER)

    @property
    def covariant_rank(self) -> int:
        return sum(1 for v in self.variance if v == LOWER)

    def slot_of_upper(self, upper_slot: int) -> int:
        """Global position of the upper_slot-th contravariant slot."""
        count = -1
        for pos, v in enumerate(self.variance):
            if v == UPPER:
                count += 1
                if count == upper_slot:
                    return pos
        raise ValueError("invalid contraction: no such contravariant slot")

    def slot_of_lower(self, lower_slot: int) -> int:
        """Global position of the lower_slot-th covariant slot."""
        count = -1
        for pos, v in enumerate(self.variance):
            if v == LOWER:
                count += 1
                if count == lower_slot:
                    return pos
        raise ValueError("invalid contraction: no such covariant slot")

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, dim: int, variance: tuple[str, ...]) -> "DenseTensor":
        return cls(dim, variance, (ZERO,) * dim ** len(variance))

    @classmethod
    def from_function(
        cls,
        dim: int,
        variance: tuple[str, ...],
        fn: Callable[..., Fraction],
    ) -> "DenseTensor":
        comps = tuple(
            Fraction(fn(*idx))
            for idx in itertools.product(range(dim), repeat=len(variance))
        )
        return cls(dim, variance, comps)

    @classmethod
    def identity(cls, dim: int) -> "DenseTensor":
        """Kronecker delta as a (1,1) tensor."""
        return cls.from_function(
            dim, (UPPER, LOWER), lambda i, j: ONE if i == j else ZERO
        )

    @classmethod
    def diagonal(cls, dim: int, entries: Iterable[Fraction], variance: tuple[str, str]) -> "DenseTensor":
        diag = list(entries)
        if len(diag) != dim:
            raise ValueError("need one diagonal entry per dimension")
        return cls.from_function(
            dim, variance, lambda i, j: Fraction(diag[i]) if i == j else ZERO
        )

    # -- access ------------------------------------------------------------

    def __getitem__(self, idx: tuple[int, ...]) -> Fraction:
        if len(idx) != self.rank:
            raise IndexError("index tuple has wrong length")
        flat = 0
        for i, s in zip(idx, _strides(self.dim, self.rank)):
            if not 0 <= i < self.dim:
                raise IndexError("index out of range")
            flat += i * s
        return self.components[flat]

    def nonzero_items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        strides = _strides(self.dim, self.rank)
        for flat, value in enumerate(self.components):
            if value:
                yield tuple((flat // s) % self.dim for s in strides), value

    def is_zero(self) -> bool:
        return not any(self.components)

    # -- pointwise algebra ---------------------------------------------------

    def _check_same_shape(self, other: "DenseTensor") -> None:
        if self.dim != other.dim or self.variance != other.variance:
            raise ValueError("tensor shapes do not match")

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        self._check_same_shape(other)
        return DenseTensor(
            self.dim,
            self.variance,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        self._check_same_shape(other)
        return DenseTensor(
            self.dim,
            self.variance,
            tuple(a - b for a, b in zip(self.components, other.components)),
        )

    def __neg__(self) -> "DenseTensor":
        return DenseTensor(self.dim, self.variance, tuple(-a for a in self.components))

    def scale(self, c: Fraction | int) -> "DenseTensor":
        c = Fraction(c)
        return DenseTensor(self.dim, self.variance, tuple(c * a for a in self.components))


class TensorBuilder:
    """Mutable accumulator for assembling a DenseTensor entry by entry."""

    def __init__(self, dim: int, variance: tuple[str, ...]):
        self.dim = dim
        self.variance = variance
        self._strides = _strides(dim, len(variance))
        self._data: list[Fraction] = [ZERO] * dim ** len(variance)

    def _flat(self, idx: tuple[int, ...]) -> int:
        return sum(i * s for i, s in zip(idx, self._strides))

    def add(self, idx: tuple[int, ...], value: Fraction) -> None:
        self._data[self._flat(idx)] += value

    def set(self, idx: tuple[int, ...], value: Fraction) -> None:
        self._data[self._flat(idx)] = Fraction(value)

    def set_checked(self, idx: tuple[int, ...], value: Fraction) -> None:
        """Set an entry, refusing to overwrite it with a different value.

        Used when filling a component table from generating entries plus
        symmetries: overlapping orbits must agree or the table is wrong.
        """
        flat = self._flat(idx)
        current = self._data[flat]
        value = Fraction(value)
        if current and current != value:
            raise ValueError(f"conflicting values at index {idx}: {current} vs {value}")
        self._data[flat] = value

    def build(self) -> DenseTensor:
        return DenseTensor(self.dim, self.variance, tuple(self._data))


def tensor_product(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """Outer product; slots of b follow the slots of a."""
    if a.dim != b.dim:
        raise ValueError("tensor dimensions do not match")
    comps = tuple(x * y for x in a.components for y in b.components)
    return DenseTensor(a.dim, a.variance + b.variance, comps)


def contract(t: DenseTensor, upper_slot: int, lower_slot: int) -> DenseTensor:
    """Trace one contravariant slot against one covariant slot.

    Slots are counted per kind: upper_slot indexes the contravariant slots in
    order of appearance, lower_slot the covariant ones.
    """
    pos_u = t.slot_of_upper(upper_slot)
    pos_l = t.slot_of_lower(lower_slot)
    dim, rank = t.dim, t.rank
    keep = [p for p in range(rank) if p not in (pos_u, pos_l)]
    out = TensorBuilder(dim, tuple(t.variance[p] for p in keep))
    for idx, value in t.nonzero_items():
        if idx[pos_u] != idx[pos_l]:
            continue
        out.add(tuple(idx[p] for p in keep), value)
    return out.build()


def contract_pair(a: DenseTensor, a_slot: int, b: DenseTensor, b_slot: int) -> DenseTensor:
    """Contract an upper slot of a against a lower slot of b (per-kind numbering)."""
    if a.dim != b.dim:
        raise ValueError("tensor dimensions do not match")
    pos_a = a.slot_of_upper(a_slot)
    pos_b = b.slot_of_lower(b_slot)
    dim = a.dim
    keep_a = [p for p in range(a.rank) if p != pos_a]
    keep_b = [p for p in range(b.rank) if p != pos_b]
    variance = tuple(a.variance[p] for p in keep_a) + tuple(b.variance[p] for p in keep_b)
    out = TensorBuilder(dim, variance)
    # group b's nonzero entries by the contracted index to skip zero products
    by_index: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
    for idx, value in b.nonzero_items():
        by_index.setdefault(idx[pos_b], []).append((tuple(idx[p] for p in keep_b), value))
    for idx, value in a.nonzero_items():
        for rest, bv in by_index.get(idx[pos_a], ()):
            out.add(tuple(idx[p] for p in keep_a) + rest, value * bv)
    return out.build()


def _flip_slot(t: DenseTensor, pos: int, metric: DenseTensor, new_variance: str) -> DenseTensor:
    # metric is (2,0) when raising, (0,2) when lowering; slot keeps its position
    dim = t.dim
    out = TensorBuilder(dim, t.variance[:pos] + (new_variance,) + t.variance[pos + 1 :])
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), value in metric.nonzero_items():
        rows.setdefault(j, []).append((i, value))
    for idx, value in t.nonzero_items():
        for k, mv in rows.get(idx[pos], ()):
            out.add(idx[:pos] + (k,) + idx[pos + 1 :], value * mv)
    return out.build()


def raise_index(t: DenseTensor, slot: int, g_inv: DenseTensor) -> DenseTensor:
    """Raise the slot-th covariant slot with the inverse metric.

    The slot keeps its position and becomes contravariant.
    """
    if g_inv.variance != (UPPER, UPPER) or g_inv.dim != t.dim:
        raise ValueError("inverse metric must be a (2,0) tensor of matching dimension")
    return _flip_slot(t, t.slot_of_lower(slot), g_inv, UPPER)


def lower_index(t: DenseTensor, slot: int, g: DenseTensor) -> DenseTensor:
    """Lower the slot-th contravariant slot with the metric."""
    if g.variance != (LOWER, LOWER) or g.dim != t.dim:
        raise ValueError("metric must be a (0,2) tensor of matching dimension")
    return _flip_slot(t, t.slot_of_upper(slot), g, LOWER)


def contract_vector(t: DenseTensor, slot: int, vector: tuple[Fraction, ...]) -> DenseTensor:
    """Plug a vector (components in the working basis) into a covariant slot."""
    if len(vector) != t.dim:
        raise ValueError("vector length does not match tensor dimension")
    pos = t.slot_of_lower(slot)
    keep = [p for p in range(t.rank) if p != pos]
    out = TensorBuilder(t.dim, tuple(t.variance[p] for p in keep))
    for idx, value in t.nonzero_items():
        v = vector[idx[pos]]
        if v:
            out.add(tuple(idx[p] for p in keep), value * v)
    return out.build()


def evaluate_covariant(t: DenseTensor, *vectors: tuple[Fraction, ...]) -> Fraction:
    """Evaluate a fully covariant tensor on one vector per slot."""
    if len(vectors) != t.rank or t.covariant_rank != t.rank:
        raise ValueError("need exactly one vector per covariant slot")
    total = ZERO
    for idx, value in t.nonzero_items():
        term = value
        for p, i in enumerate(idx):
            term *= vectors[p][i]
            if not term:
                break
        total += term
    return total


def cyclic_sum_3(t: DenseTensor) -> DenseTensor:
    """Sum of t over the three cyclic rotations of its slots; t must be (0,3)."""
    if t.variance != (LOWER, LOWER, LOWER):
        raise ValueError("cyclic sum needs a (0,3) tensor")
    out = TensorBuilder(t.dim, t.variance)
    for (i, j, k), value in t.nonzero_items():
        out.add((i, j, k), value)
        out.add((k, i, j), value)
        out.add((j, k, i), value)
    return out.build()


def metric_dual(t: DenseTensor, g: DenseTensor, g_inv: DenseTensor) -> DenseTensor:
    """Flip every slot of t with the metric (lower the upper, raise the lower)."""
    out = t
    for pos, v in enumerate(t.variance):
        if v == UPPER:
            out = _flip_slot(out, pos, g, LOWER)
        else:
            out = _flip_slot(out, pos, g_inv, UPPER)
    return out


def metric_square_norm(t: DenseTensor, g_inv: DenseTensor) -> Fraction:
    """Full self-contraction of a covariant tensor, one inverse metric per slot."""
    if t.covariant_rank != t.rank:
        raise ValueError("square norm is defined here for fully covariant tensors")
    dual = t
    for pos in range(t.rank):
        dual = _flip_slot(dual, pos, g_inv, UPPER)
    return sum(
        (value * t.components[flat] for flat, value in _enumerate_flat(dual)),
        start=ZERO,
    )


def mixed_square_norm(t: DenseTensor, g: DenseTensor, g_inv: DenseTensor) -> Fraction:
    """Square norm of a mixed tensor: pair t against its full metric dual."""
    dual = metric_dual(t, g, g_inv)
    return sum(
        (value * t.components[flat] for flat, value in _enumerate_flat(dual)),
        start=ZERO,
    )


def _enumerate_flat(t: DenseTensor) -> Iterator[tuple[int, Fraction]]:
    for flat, value in enumerate(t.components):
        if value:
            yield flat, value
