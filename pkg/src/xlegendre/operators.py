"""The deformed Legendre operator, its factorizations, and identity checks.

For a deformation polynomial tau the second-order operator acts on p as

    (1 - z^2) * (p'' - 2*(tau'/tau)*p' + (tau''/tau)*p) - 2*z*p'

and reduces to the classical Legendre operator for tau = 1.  Its polynomial
eigenfunctions carry eigenvalues -i(i+1); that sign convention is fixed
package-wide.

Each deformation level corresponds to a confluent pair of first-order
factorization operators.  With base deformation tau, step polynomial phi and
deformed tau_m the operators are

    A(tau, phi):  f  ->  (phi*f' - phi'*f) / tau          (= Wr(phi, f)/tau)
    B(phi, tau):  f  ->  ((1-z^2)*(tau*f' - tau'*f) - 2*z*tau*f) / phi

and the deformation step is certified by three operator identities checked on
a spanning probe set 1, z, ..., z^D: a second-order operator with rational
coefficients is determined by its action on D+1 independent polynomials once
D exceeds twice the largest coefficient degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .legendre import legendre_poly
from .polyring import Poly
from .ratfun import RatFun
from .xfamily import FamilyKey, exceptional_poly, family, tau

__all__ = [
    "FactorizationReport",
    "FirstOrderOp",
    "IdentityCheck",
    "OperatorSpec",
    "a_op",
    "apply_T_hat",
    "apply_first_order",
    "b_op",
    "eigenvalue",
    "t_hat_numerator",
    "verify_eigen",
    "verify_factorization",
    "verify_intertwining",
    "wronskian",
]

_ONE_MINUS_Z2 = Poly([1, 0, -1])
_TWO_Z = Poly([0, 2])


def eigenvalue(i: int) -> int:
    """Eigenvalue attached to index i: -i(i+1)."""
    return -i * (i + 1)


def wronskian(a: Poly, b: Poly) -> Poly:
    """Wr(a, b) = a*b' - a'*b."""
    return a * b.differentiate() - a.differentiate() * b


@dataclass(frozen=True)
class OperatorSpec:
    """Second-order operator determined by a nonzero deformation polynomial."""

    tau: Poly

    def __post_init__(self) -> None:
        if self.tau.is_zero:
            raise ValueError("deformation polynomial must be nonzero")


def t_hat_numerator(tau_val: Poly, p: Poly) -> Poly:
    """Numerator of the operator applied to p, over denominator tau."""
    dt = tau_val.differentiate()
    dtt = dt.differentiate()
    dp = p.differentiate()
    dpp = dp.differentiate()
    return _ONE_MINUS_Z2 * (dpp * tau_val - (dt * dp).scale(2) + dtt * p) - (
        _TWO_Z * dp * tau_val
    )


def apply_T_hat(spec: OperatorSpec, p: Poly) -> RatFun:
    """Apply the operator; the result is polynomial exactly on eigenfunctions."""
    return RatFun.of(t_hat_numerator(spec.tau, p), spec.tau)


@dataclass(frozen=True)
class FirstOrderOp:
    """First-order factorization operator of kind A or B (see module docs)."""

    kind: Literal["A", "B"]
    first: Poly
    second: Poly

    def __post_init__(self) -> None:
        if self.first.is_zero or self.second.is_zero:
            raise ValueError("factorization operator polynomials must be nonzero")


def a_op(tau_val: Poly, phi: Poly) -> FirstOrderOp:
    return FirstOrderOp("A", tau_val, phi)


def b_op(phi: Poly, tau_val: Poly) -> FirstOrderOp:
    return FirstOrderOp("B", phi, tau_val)


def apply_first_order(op: FirstOrderOp, f: RatFun | Poly) -> RatFun:
    if isinstance(f, Poly):
        f = RatFun.from_poly(f)
    u, v = f.num, f.den
    wr_uv = u.differentiate() * v - u * v.differentiate()  # (u/v)' numerator over v^2
    if op.kind == "A":
        tau_val, phi = op.first, op.second
        num = phi * wr_uv - phi.differentiate() * (u * v)
        return RatFun.of(num, tau_val * v * v)
    phi, tau_val = op.first, op.second
    num = _ONE_MINUS_Z2 * (tau_val * wr_uv - tau_val.differentiate() * (u * v)) - (
        _TWO_Z * tau_val * (u * v)
    )
    return RatFun.of(num, phi * v * v)


def verify_eigen(key: FamilyKey, i: int) -> bool:
    """Exact check that the i-th family polynomial has eigenvalue -i(i+1)."""
    fam = family(key)
    p = fam.polynomial(i)
    return t_hat_numerator(fam.tau, p) == (p * fam.tau).scale(eigenvalue(i))


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    passed: bool
    counterexample_probe: Poly | None

    def to_json_obj(self, key: FamilyKey, i: int | None = None) -> dict:
        return {
            "identity": self.identity,
            "key": key.to_json_obj(),
            "i": i,
            "pass": self.passed,
            "counterexample_probe": (
                None
                if self.counterexample_probe is None
                else self.counterexample_probe.to_json()
            ),
        }


@dataclass(frozen=True)
class FactorizationReport:
    key: FamilyKey
    step_level: int
    probe_degree: int
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "kind": "factorization",
            "key": self.key.to_json_obj(),
            "step_level": self.step_level,
            "probe_degree": self.probe_degree,
            "pass": self.passed,
            "checks": [c.to_json_obj(self.key) for c in self.checks],
        }


def _step_context(key: FamilyKey, m_step: int):
    if m_step not in key.m:
        raise ValueError(f"level {m_step} is not part of the key {key}")
    base = key.without(key.m.index(m_step))
    tau0 = tau(base)
    tau1 = tau(key)
    phi = exceptional_poly(base, m_step)
    return base, tau0, tau1, phi


def verify_factorization(
    key: FamilyKey, m_step: int, probe_degree: int | None = None
) -> FactorizationReport:
    """Probe the three operator identities certifying one deformation step.

    The step is the one that adds level ``m_step`` to the family obtained by
    removing it from ``key``.  Identities are checked as exact equalities of
    rational functions on the probes 1, z, ..., z^D.
    """
    base, tau0, tau1, phi = _step_context(key, m_step)
    lam = eigenvalue(m_step)
    if probe_degree is None:
        degs = [int(q.degree) for q in (tau0, tau1, phi) if not q.is_zero]
        probe_degree = 2 * max(degs + [2]) + 2

    a0, b0 = a_op(tau0, phi), b_op(phi, tau0)
    a1, b1 = a_op(tau1, phi), b_op(phi, tau1)
    spec0, spec1 = OperatorSpec(tau0), OperatorSpec(tau1)

    failures: dict[str, Poly] = {}
    names = ("factor_base", "factor_deformed", "middle_product")
    for k in range(probe_degree + 1):
        probe = Poly.monomial(k)
        probe_rf = RatFun.from_poly(probe)
        if names[0] not in failures:
            lhs = apply_T_hat(spec0, probe)
            rhs = apply_first_order(b0, apply_first_order(a0, probe_rf)) + probe_rf * lam
            if lhs != rhs:
                failures[names[0]] = probe
        if names[1] not in failures:
            lhs = apply_T_hat(spec1, probe)
            rhs = apply_first_order(b1, apply_first_order(a1, probe_rf)) + probe_rf * lam
            if lhs != rhs:
                failures[names[1]] = probe
        if names[2] not in failures:
            lhs = apply_first_order(a0, apply_first_order(b0, probe_rf))
            rhs = apply_first_order(a1, apply_first_order(b1, probe_rf))
            if lhs != rhs:
                failures[names[2]] = probe
    checks = tuple(
        IdentityCheck(name, name not in failures, failures.get(name))
        for name in names
    )
    return FactorizationReport(key, m_step, probe_degree, checks)


def verify_intertwining(key: FamilyKey, m_step: int, i: int) -> bool:
    """Exact check of the second-order intertwining identity for index i.

    The operator built from one deformation step maps the base family's i-th
    polynomial onto (lambda_i - lambda_m) times the deformed one:

        B(phi, tau_m) A(tau, phi) pi_i == (lambda_i - lambda_m) * pi_{m;i}

    (The sign follows from d/dz[(1-z^2)*Wr(phi, pi_i)/tau^2] being
    (lambda_i - lambda_m)*pi_i*phi/tau^2; both sides vanish at z = -1.)
    """
    if i == m_step:
        raise ValueError("intertwining check requires i distinct from the step level")
    base, tau0, tau1, phi = _step_context(key, m_step)
    pi_i = exceptional_poly(base, i)
    pi_mi = exceptional_poly(key, i)
    factor = eigenvalue(i) - eigenvalue(m_step)
    rhs = apply_first_order(
        b_op(phi, tau1), apply_first_order(a_op(tau0, phi), RatFun.from_poly(pi_i))
    )
    return rhs == RatFun.from_poly(pi_mi.scale(factor))
