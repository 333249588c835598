"""Vector-valued formal maps of momentum slots k, q (and w)."""

from .poly import Poly, layout_for, subs_many

__all__ = ["MomentumMap", "momentum_substitute", "SLOT_GROUPS"]

SLOT_GROUPS = ("k", "q", "w")


class MomentumMap:
    """Components mu -> Poly in a and the momentum symbols of its slots."""

    __slots__ = ("components", "slot_count")

    def __init__(self, components, slot_count=1):
        if slot_count not in (1, 2, 3):
            raise ValueError("slot_count must be 1, 2 or 3")
        self.components = list(components)
        self.slot_count = slot_count

    @classmethod
    def identity(cls, n, order, group="k"):
        return cls(Poly.vector(layout_for(n), order, group), 1)

    @classmethod
    def sum_of_slots(cls, n, order, slots=2):
        L = layout_for(n)
        comps = []
        for mu in range(n):
            s = Poly.zero(L, order)
            for g in SLOT_GROUPS[:slots]:
                s = s + Poly.var(L, order, g, mu)
            comps.append(s)
        return cls(comps, slots)

    @property
    def n(self):
        return len(self.components)

    @property
    def order(self):
        return min(p.order for p in self.components)

    @property
    def layout(self):
        return self.components[0].layout

    def __getitem__(self, mu):
        return self.components[mu]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __add__(self, other):
        return MomentumMap([p + q for p, q in zip(self, other)], max(self.slot_count, _slots(other)))

    def __sub__(self, other):
        return MomentumMap([p - q for p, q in zip(self, other)], max(self.slot_count, _slots(other)))

    def __neg__(self):
        return MomentumMap([-p for p in self], self.slot_count)

    def __eq__(self, other):
        if isinstance(other, MomentumMap):
            other = other.components
        return len(self.components) == len(other) and all(p == q for p, q in zip(self.components, other))

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def truncate(self, order):
        return MomentumMap([p.truncate(order) for p in self], self.slot_count)

    def rename(self, mapping, slot_count=None):
        return MomentumMap([p.rename(mapping) for p in self], slot_count or self.slot_count)

    def flip_a(self):
        return MomentumMap([p.flip_a() for p in self], self.slot_count)

    def partial(self, group, nu):
        return MomentumMap([p.diff(group, nu) for p in self], self.slot_count)

    def is_homogeneous(self):
        """a-degree m terms carry total momentum degree m + 1."""
        L = self.layout
        sh = L.ashift
        for p in self.components:
            for m in p.terms:
                mom = sum(L.group_degree(m, g) for g in SLOT_GROUPS)
                if mom != (m >> sh) + 1:
                    return False
        return True

    def compose(self, values, group):
        """Substitute the symbols of ``group`` by the components of ``values``."""
        vals = {(group, mu): v for mu, v in enumerate(values)}
        return MomentumMap(subs_many(self.components, vals), self.slot_count)

    def __str__(self):
        return "[" + ", ".join(str(p) for p in self.components) + "]"

    __repr__ = __str__


def _slots(m):
    return m.slot_count if isinstance(m, MomentumMap) else 1


def momentum_substitute(m, slot, value):
    """Replace the momentum symbols of ``slot`` (1 = k, 2 = q, 3 = w) by ``value``.

    ``value`` is a MomentumMap (or list of Polys) written in any momentum
    symbols, or None for the zero vector.
    """
    if not 1 <= slot <= m.slot_count:
        raise IndexError(f"slot {slot} out of range for a {m.slot_count}-slot map")
    group = SLOT_GROUPS[slot - 1]
    if value is None:
        return MomentumMap([p.set_zero(group) for p in m], m.slot_count)
    return m.compose(list(value), group)
