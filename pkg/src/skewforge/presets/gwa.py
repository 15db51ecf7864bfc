"""Rank-one generalized Weyl algebras inside Q(t) * Z.

With ``sigma: t -> t - q`` and the left-coefficient product, ``X = 1*sigma``
and ``Y = a*sigma^-1`` give ``YX = a``, ``XY = sigma(a)``,
``X lam = sigma(lam) X`` and ``lam Y = Y sigma(lam)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import Poly, RatFunc, poly_to_text, ratfunc_from_text
from ..autgroup import AffineAut, ShiftMonoid, apply_automorphism, trivial_group
from ..errors import InvalidSetting, RelationFailed
from ..skewring import InvariantElement, Setting, SkewElement, skew_mul


@dataclass(frozen=True)
class GWASpec:
    a: object = "t"
    q: Fraction = Fraction(1)

    def polynomial(self) -> RatFunc:
        a = self.a
        if isinstance(a, str):
            f = ratfunc_from_text(a, 1, ["t"])
        elif isinstance(a, Poly):
            f = RatFunc.from_poly(a.with_nvars(1))
        elif isinstance(a, RatFunc):
            f = a.with_nvars(1)
        else:
            f = RatFunc.const(Fraction(a), 1)
        if not f.is_polynomial():
            raise InvalidSetting("a must be a polynomial in t")
        if f.is_zero():
            raise InvalidSetting("a must be nonzero")
        return f


def gwa_sigma(q) -> AffineAut:
    return AffineAut.from_shift([-Fraction(q)])


def build_gwa(spec: GWASpec, check: bool = True):
    """Return ``(setting, X, Y)``; the four defining relations are asserted."""
    a = spec.polynomial()
    q = Fraction(spec.q)
    if not q:
        raise InvalidSetting("q must be nonzero")
    sigma = gwa_sigma(q)
    t = RatFunc.var(0, 1)
    label = f"gwa({poly_to_text(a.as_poly(), ['t'])},{q})"
    setting = Setting(["t"], trivial_group(1), ShiftMonoid.lattice([[-q]], 1), [t], label,
                      meta={"kind": "gwa", "q": str(q)})
    X = InvariantElement._raw(setting, {sigma: RatFunc.const(1, 1)})
    Y = InvariantElement._raw(setting, {sigma.inverse(): a})
    if check:
        for name, residual in gwa_residuals(setting, X, Y, a, sigma):
            if not residual.is_zero():
                raise RelationFailed(name, residual)
    return setting, X, Y


def gwa_residuals(setting: Setting, X: SkewElement, Y: SkewElement, a: RatFunc, sigma: AffineAut,
                  probes=None) -> list:
    """``(name, lhs - rhs)`` for each defining relation; lam runs over Gamma and ``t^2``."""
    scalar = lambda f: SkewElement.scalar(setting, f)  # noqa: E731
    t = setting.var(0)
    out = [
        ("YX=a", skew_mul(Y, X) - scalar(a)),
        ("XY=a^sigma", skew_mul(X, Y) - scalar(apply_automorphism(sigma, a))),
    ]
    for lam in probes or [t, t * t + 1]:
        ls = apply_automorphism(sigma, lam)
        tag = setting.show(lam)
        out.append((f"X({tag})=({tag})^sigma X", skew_mul(X, scalar(lam)) - skew_mul(scalar(ls), X)))
        out.append((f"({tag})Y=Y({tag})^sigma", skew_mul(scalar(lam), Y) - skew_mul(Y, scalar(ls))))
    return out
