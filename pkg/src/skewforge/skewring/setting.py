"""The ambient data shared by every element: L, G, the monoid and Gamma."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..arith import RatFunc, ratfunc_from_text, ratfunc_to_json, ratfunc_to_text
from ..autgroup import (
    AffineAut,
    FiniteGroup,
    SeparationResult,
    ShiftMonoid,
    apply_automorphism,
    aut_to_json,
    is_separating,
    normalizes_check,
)
from ..errors import InvalidSetting, UnknownVariable


@dataclass(frozen=True)
class Variable:
    id: int
    name: str
    row: int | None = None


class Setting:
    """Variables of L, the finite group G, the monoid M and generators of Gamma.

    Construction checks that each Gamma-generator is G-invariant, that G
    normalizes M and that M is not detectably non-separating.
    """

    def __init__(self, variables: Sequence, group: FiniteGroup, monoid: ShiftMonoid,
                 gamma_gens: Sequence[RatFunc], label: str, meta: dict | None = None,
                 check: bool = True, separation_ball: int = 1):
        vs = []
        for i, v in enumerate(variables):
            if isinstance(v, Variable):
                vs.append(v)
            elif isinstance(v, str):
                vs.append(Variable(i, v))
            else:
                vs.append(Variable(*v))
        if [v.id for v in vs] != list(range(len(vs))):
            raise InvalidSetting("variable ids must be 0..n-1 in order")
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise InvalidSetting("variable names must be distinct")
        self.variables = tuple(vs)
        self.nvars = len(vs)
        self.group = group
        self.monoid = monoid
        self.gamma_gens = tuple(g.with_nvars(self.nvars) for g in gamma_gens)
        self.label = label
        self.meta = dict(meta or {})
        self._index = {v.name: v.id for v in vs}
        if group.nvars != self.nvars or monoid.nvars != self.nvars:
            raise InvalidSetting("group and monoid must act on the setting's variables")
        self.separation: SeparationResult | None = None
        if check:
            self.validate(separation_ball)

    def validate(self, ball: int = 1):
        for g in self.group.generators:
            for gam in self.gamma_gens:
                if apply_automorphism(g, gam) != gam:
                    raise InvalidSetting(f"Gamma-generator {self.show(gam)} is not G-invariant")
        if not normalizes_check(self.group, self.monoid):
            raise InvalidSetting("G does not normalize the monoid")
        self.separation = is_separating(self, self.monoid, self.group, ball)
        if self.separation.status is False:
            raise InvalidSetting(f"monoid is not separating; witness {self.separation.witness}")

    # variables
    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def var(self, name: str | int) -> RatFunc:
        i = self.index(name) if isinstance(name, str) else name
        if not 0 <= i < self.nvars:
            raise UnknownVariable(i)
        return RatFunc.var(i, self.nvars)

    def const(self, c) -> RatFunc:
        return RatFunc.const(Fraction(c), self.nvars)

    def parse(self, text: str) -> RatFunc:
        return ratfunc_from_text(text, self.nvars, self.names)

    def show(self, f: RatFunc) -> str:
        return ratfunc_to_text(f, self.names)

    def identity(self) -> AffineAut:
        return AffineAut.identity(self.nvars)

    def shift(self, vec: dict | Sequence) -> AffineAut:
        """Pure shift from a dense vector or a ``{name or id: amount}`` map."""
        if isinstance(vec, dict):
            dense = [0] * self.nvars
            for k, v in vec.items():
                dense[self.index(k) if isinstance(k, str) else k] = v
            vec = dense
        return AffineAut.from_shift(vec)

    def is_gamma(self, f: RatFunc) -> bool:
        """G-invariant with constant denominator."""
        f = f.with_nvars(self.nvars)
        if not f.is_polynomial():
            return False
        return all(apply_automorphism(g, f) == f for g in self.group.generators)

    def compatible(self, other: "Setting") -> bool:
        return self is other or (self.label == other.label and self.nvars == other.nvars)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "variables": [{"id": v.id, "name": v.name, "row": v.row} for v in self.variables],
            "group": {
                "order": self.group.order,
                "generators": [aut_to_json(g) for g in self.group.generators],
            },
            "monoid": self.monoid.to_json(),
            "gamma_gens": [ratfunc_to_json(g) for g in self.gamma_gens],
            "gamma_text": [self.show(g) for g in self.gamma_gens],
            "meta": {k: v for k, v in self.meta.items() if isinstance(v, (int, str))},
        }

    def __repr__(self):
        return f"Setting({self.label!r}, nvars={self.nvars}, |G|={self.group.order}, monoid={self.monoid.kind})"

