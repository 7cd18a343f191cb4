"""Closed-form and implicit-equation exponent bounds.

Covers the defect of the sharp uniform/ordinary exponent inequality, the
four dual-exponent bounds with their regular-graph collapse, the even-n
uniform-exponent constants (both the polynomial one and its implicit-equation
refinement), the auxiliary root w(n) and the cap mu_n, the growth constant
Theta with its regular-graph bounds, transference identities, and the n=2
classical identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .numerics import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_TOL,
    Bracket,
    InvalidPoint,
    NoSignChange,
    PrecisionReal,
    Scalar,
    e_value,
    exp,
    find_root,
    scan_brackets,
    scan_for_bracket,
    sqrt,
)

__all__ = [
    "BoundsError",
    "DomainError",
    "HypothesisViolated",
    "DegenerateContext",
    "NotRegularGraph",
    "NoRoot",
    "BoundContext",
    "DualBoundSet",
    "MuValue",
    "ClassicalN2",
    "ConstantsReport",
    "mm_defect",
    "dual_bounds",
    "regular_graph_duals",
    "beta_for_equality",
    "tau",
    "laurent_odd_bound",
    "mu",
    "sigma",
    "theta",
    "regular_graph_lambda_bound",
    "chi_estimate",
    "transfer_dual",
    "dual_to_psi",
    "classical_low_dim",
    "lefths_solve",
    "integer_approx_exponents",
    "constants_report",
]


class BoundsError(Exception):
    """Base class for bound-computation failures."""


class DomainError(BoundsError):
    """Inputs violate an operation's preconditions."""


class HypothesisViolated(BoundsError):
    """epsilon exceeds the admissible threshold; the dual bounds do not apply."""


class DegenerateContext(BoundsError):
    """A derived quantity left its admissible range (raised defensively)."""


class NotRegularGraph(BoundsError):
    """(alpha, beta) does not satisfy the exponent identity within tolerance."""


class NoRoot(BoundsError):
    """No certified sign change was found for an implicit equation."""


def _as_real(x: Scalar, bits: Optional[int] = None) -> PrecisionReal:
    if isinstance(x, PrecisionReal):
        return x
    return PrecisionReal(x, bits)


def _resolve_bits(precision_bits: Optional[int], *vals) -> int:
    if precision_bits is not None:
        return int(precision_bits)
    carried = [v.precision_bits for v in vals if isinstance(v, PrecisionReal)]
    return max(carried) if carried else DEFAULT_PRECISION_BITS


def _geometric_sum(first: PrecisionReal, ratio: PrecisionReal, count: int) -> PrecisionReal:
    """first * (1 + ratio + ... + ratio^(count-1)), exact special case at ratio 1."""
    bits = max(first.precision_bits, ratio.precision_bits)
    if count <= 0:
        return PrecisionReal(0, bits)
    if ratio == 1:
        return first * count
    return first * (1 - ratio**count) / (1 - ratio)


def _epsilon_value(n: int, alpha: PrecisionReal, beta: PrecisionReal) -> PrecisionReal:
    """1 - sum_{j=1}^{n} alpha^j / beta^(j-1), via the geometric closed form."""
    return 1 - _geometric_sum(alpha, alpha / beta, n)


# defects within this absolute tolerance count as zero (regular graph)
ZERO_DEFECT_TOL = PrecisionReal("1e-20", 64)


# -- the defect and Theorem-level dual bounds --------------------------------


@dataclass(frozen=True)
class BoundContext:
    """(n, alpha, beta) with every derived quantity of the dual-bound theorem."""

    n: int
    alpha: PrecisionReal
    beta: PrecisionReal
    epsilon: PrecisionReal
    threshold: PrecisionReal
    phi: PrecisionReal
    rho: PrecisionReal
    S: PrecisionReal
    T: PrecisionReal

    def hypothesis_satisfied(self) -> bool:
        """0 <= epsilon <= threshold, up to numerical guards.

        A genuinely negative defect means no point realizes (alpha, beta)
        at all (the sharp inequality fails), so the dual bounds are
        meaningless there; defects within the 1e-20 zero-defect tolerance
        (e.g. roots of the equality equation, or alpha = beta = 1/n with a
        non-dyadic 1/n) count as zero.  The threshold side carries a
        2^(8-p) round-off guard.
        """
        if abs(self.epsilon) <= ZERO_DEFECT_TOL:
            return True  # zero defect always satisfies (threshold >= 0)
        p = self.epsilon.precision_bits
        slack = PrecisionReal(1, p) / (1 << min(p - 8, 2 * p))
        return self.epsilon.sign() > 0 and self.epsilon <= self.threshold + slack


@dataclass(frozen=True)
class DualBoundSet:
    """The four dual-exponent bounds, exactly as displayed in the source."""

    what_lower: PrecisionReal
    what_upper: PrecisionReal
    w_lower: PrecisionReal
    w_upper: PrecisionReal


def mm_defect(
    n: int,
    alpha: Scalar,
    beta: Scalar,
    precision_bits: Optional[int] = None,
) -> BoundContext:
    """Defect epsilon of the sharp exponent inequality plus derived quantities.

    beta may be +inf, in which case epsilon reduces to 1 - alpha and the
    derived envelope quantities take their limit values.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits, alpha, beta)
    a = _as_real(alpha, bits)
    b = _as_real(beta, bits)
    if a.sign() <= 0:
        raise DomainError("alpha must be positive")
    if a > b:
        raise DomainError("alpha must not exceed beta")

    one = PrecisionReal(1, bits)
    zero = PrecisionReal(0, bits)
    r = a / b
    eps = 1 - _geometric_sum(a, r, n)
    gap = b - a
    smaller = a if a <= gap else gap
    threshold = r**n * smaller / (4 * n)

    if eps == 0:
        phi = rho = zero
    else:
        phi = 4 * eps * b ** (n - 1) / a**n
        rho = 4 * eps * b**2 / a**2

    z = r + phi
    if n == 1:
        S, T = one, zero
    elif z.is_infinite:
        S = one  # only the j=1 term survives
        T = PrecisionReal(float("inf") if z > 0 else float("-inf"), bits)
    elif z == 0:
        S = PrecisionReal(float("inf"), bits)  # z^(1-j) blows up for j >= 2
        T = zero
    else:
        S = _geometric_sum(one, 1 / z, n)
        T = _geometric_sum(z, z, n - 1)

    return BoundContext(n, a, b, eps, threshold, phi, rho, S, T)


def dual_bounds(ctx: BoundContext) -> DualBoundSet:
    """The two lower and two upper dual-exponent bounds for a valid context."""
    if not ctx.beta.is_finite:
        raise DomainError("dual bounds require a finite beta")
    if not ctx.hypothesis_satisfied():
        side = "is negative (no point realizes the pair)" if ctx.epsilon.sign() < 0 else (
            f"exceeds threshold={float(ctx.threshold):.6g}"
        )
        raise HypothesisViolated(f"epsilon={float(ctx.epsilon):.6g} {side}")
    n = ctx.n
    d = ctx.alpha / ctx.beta - ctx.phi
    e = ctx.beta - ctx.rho
    if d.sign() <= 0 or e.sign() <= 0:
        raise DegenerateContext("alpha/beta - phi and beta - rho must stay positive")

    d_minus_n = d**-n
    den_hat = d_minus_n + e * (1 - ctx.S)
    if den_hat.sign() <= 0:
        raise DegenerateContext("uniform lower-bound denominator is not positive")
    what_lower = e * ctx.S / den_hat
    what_upper = d_minus_n / e
    w_upper = d ** -(n + 1) / e

    bp2 = (ctx.beta + ctx.rho) ** 2
    den_ord = ctx.rho - ctx.beta + bp2 * ctx.T
    if den_ord == 0:
        raise DegenerateContext("ordinary lower-bound denominator vanished")
    w_lower = (ctx.rho**2 - ctx.beta**2 - bp2 * ctx.T) / den_ord

    return DualBoundSet(what_lower, what_upper, w_lower, w_upper)


def regular_graph_duals(
    n: int,
    alpha: Scalar,
    beta: Scalar,
    precision_bits: Optional[int] = None,
    tolerance: Scalar = "1e-20",
) -> Tuple[PrecisionReal, PrecisionReal]:
    """(beta^(n-1)/alpha^n, beta^n/alpha^(n+1)) for a zero-defect pair."""
    ctx = mm_defect(n, alpha, beta, precision_bits)
    tol = _as_real(tolerance, ctx.epsilon.precision_bits)
    if abs(ctx.epsilon) > tol:
        raise NotRegularGraph(
            f"|epsilon|={float(abs(ctx.epsilon)):.3g} exceeds tolerance {float(tol):.3g}"
        )
    a, b = ctx.alpha, ctx.beta
    return (b ** (n - 1) / a**n, b**n / a ** (n + 1))


def beta_for_equality(
    n: int,
    alpha: Scalar,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """The unique beta >= alpha with zero defect, certified by bisection."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits, alpha)
    a = _as_real(alpha, bits)
    if a.sign() <= 0:
        raise DomainError("alpha must be positive")
    if a >= 1:
        raise DomainError("alpha must be below 1 (at 1 the ordinary exponent is infinite)")

    at_alpha = _epsilon_value(n, a, a)  # equals 1 - n*alpha
    if at_alpha == 0:
        return a
    if at_alpha > 0:
        raise DomainError("alpha below 1/n: no zero-defect beta with beta >= alpha")

    f = lambda b: _epsilon_value(n, a, b)
    hi = 2 * a
    for _ in range(1100):
        if f(hi).sign() > 0:
            break
        hi = 2 * hi
    else:
        raise NoRoot("no sign change while expanding the beta bracket")
    return find_root(f, Bracket(a, hi, -1, 1), tol)


# -- even-n constants ---------------------------------------------------------


def tau(
    n: int,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """Root of (n/2)^n t^(n+1) - (n/2+1) t + 1 inside (2/(n+2), 2/n), even n.

    Solved in the well-scaled variable u = (n/2) t, in which the equation
    deflated by its trivial endpoint root t = 2/n reads
    u + u^2 + ... + u^n = n/2 with clean endpoint signs.
    """
    if not isinstance(n, int) or n < 2 or n % 2:
        raise DomainError("n must be an even integer >= 2")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    one = PrecisionReal(1, bits)
    half_n = PrecisionReal(n, bits) / 2

    g = lambda u: _geometric_sum(u, u, n) - half_n
    lo = PrecisionReal(n, bits) / (n + 2)
    u_root = find_root(g, Bracket(lo, one, -1, 1), tol)
    return 2 * u_root / n


def laurent_odd_bound(n: int, precision_bits: Optional[int] = None) -> PrecisionReal:
    """2/(n+1), the odd-n uniform simultaneous-approximation bound."""
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError("n must be an odd integer >= 3")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    return PrecisionReal(2, bits) / (n + 1)


class MuValue(NamedTuple):
    w_aux: PrecisionReal
    mu: PrecisionReal


def mu(
    n: int,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> MuValue:
    """(w(n), mu_n) with mu_n = max(2n-2, w(n)).

    w(n) solves (n-1)w/(w-n) - w + 1 = ((n-1)/(w-n))^n strictly inside
    (n, 2n-1): the displayed expression has a pole at w = n and an exact
    trivial root at w = 2n-1, so the scan starts at n(1 + 2^-20) and stops
    short of the right endpoint.
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError("n must be an integer >= 2")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    nn = PrecisionReal(n, bits)
    right = PrecisionReal(2 * n - 1, bits)

    def F(w: PrecisionReal) -> PrecisionReal:
        d = w - nn
        return (n - 1) * w / d - w + 1 - ((n - 1) / d) ** n

    lo = nn + nn / (1 << 20)
    hi = right - right / (1 << 24)
    bracket = None
    for steps in (512, 4096):
        try:
            bracket = scan_for_bracket(F, lo, hi, steps)
            break
        except NoSignChange:
            continue
    if bracket is None:
        raise NoRoot(f"no certified sign change for w({n}) in ({n}, {2*n-1})")
    w = find_root(F, bracket, tol)
    floor = PrecisionReal(2 * n - 2, bits)
    return MuValue(w, w if w > floor else floor)


def _what_lower_value(ctx: BoundContext) -> PrecisionReal:
    """The uniform dual lower-bound expression; InvalidPoint off its domain."""
    d = ctx.alpha / ctx.beta - ctx.phi
    e = ctx.beta - ctx.rho
    if d.sign() <= 0 or e.sign() <= 0:
        raise InvalidPoint("context outside the admissible envelope range")
    den = d**-ctx.n + e * (1 - ctx.S)
    if den.sign() <= 0:
        raise InvalidPoint("lower-bound denominator not positive")
    return e * ctx.S / den


def sigma(
    n: int,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """Root of the implicit equation W_alpha = mu_n at beta = 2/n, even n >= 4.

    W_alpha is the uniform dual lower bound built from the defect at
    beta = 2/n.  The scan covers (1/n, tau_n], skips invalid points (where
    the envelope quantities leave their admissible range) and takes the
    certified sign change nearest tau_n; the refinement never exits it.
    """
    if not isinstance(n, int) or n < 4 or n % 2:
        raise DomainError("n must be an even integer >= 4")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    mu_n = mu(n, bits, tol).mu
    tau_n = tau(n, bits, tol)
    beta = PrecisionReal(2, bits) / n

    def f(a: PrecisionReal) -> PrecisionReal:
        if a.sign() <= 0:
            raise InvalidPoint("alpha must be positive")
        return _what_lower_value(mm_defect(n, a, beta, bits)) - mu_n

    lo = PrecisionReal(1, bits) / n
    brackets = []
    for steps in (600, 2400, 9600):
        brackets = scan_brackets(f, lo, tau_n, steps)
        if brackets:
            break
    if not brackets:
        raise NoRoot(f"no certified sign change for sigma({n}) below tau({n})")
    return find_root(f, brackets[-1], tol)


def theta(
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """Root of e^t / t = 2 sqrt(e) with t > 1, certified in (1, 3)."""
    bits = precision_bits or DEFAULT_PRECISION_BITS
    target = 2 * sqrt(e_value(bits))
    f = lambda t: exp(t) / t - target
    return find_root(f, Bracket(PrecisionReal(1, bits), PrecisionReal(3, bits), -1, 1), tol)


def regular_graph_lambda_bound(
    n: int,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """The alpha solving beta0(alpha)^(n-1) / alpha^n = mu_n, even n >= 4.

    beta0 is the zero-defect partner of alpha; along that constraint the
    left side is increasing in alpha, so the root is unique.
    """
    if not isinstance(n, int) or n < 4 or n % 2:
        raise DomainError("n must be an even integer >= 4")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    mu_n = mu(n, bits, tol).mu

    def h(a: PrecisionReal) -> PrecisionReal:
        b0 = beta_for_equality(n, a, bits, tol)
        return b0 ** (n - 1) / a**n - mu_n

    one = PrecisionReal(1, bits)
    lo = one / n + one / n / (1 << 16)
    hi = one / 2
    for _ in range(200):
        if h(hi).sign() > 0:
            break
        hi = (hi + 1) / 2
    else:
        raise NoRoot("bound expression never exceeded mu_n below alpha = 1")
    return find_root(h, Bracket(lo, hi, -1, 1), tol)


def chi_estimate(n: int, precision_bits: Optional[int] = None) -> PrecisionReal:
    """n^2 (2/n - tau_n); converges to the second-order coefficient ~3.18."""
    if not isinstance(n, int) or n < 4 or n % 2:
        raise DomainError("n must be an even integer >= 4")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    t = tau(n, bits)
    return PrecisionReal(n, bits) ** 2 * (PrecisionReal(2, bits) / n - t)


# -- transference and low-dimension identities --------------------------------


def transfer_dual(
    n: int,
    psi: Scalar,
    kind: str,
    precision_bits: Optional[int] = None,
) -> PrecisionReal:
    """Dual exponent from an extremal last-minimum slope via Mahler polarity.

    kind 'liminf' maps the lower slope to the uniform dual exponent,
    'limsup' the upper slope to the ordinary one; the identity is the same:
    result = ((n+1) / (n (1+psi)) - 1)^(-1), +inf at psi = 1/n.
    """
    if kind not in ("liminf", "limsup"):
        raise DomainError("kind must be 'liminf' or 'limsup'")
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits, psi)
    p = _as_real(psi, bits)
    if p <= -1:
        raise DomainError("psi must exceed -1")
    denom = PrecisionReal(n + 1, bits) / (n * (1 + p)) - 1
    if denom.sign() < 0:
        raise DomainError("psi exceeds the ceiling 1/n")
    if denom.sign() == 0:
        return PrecisionReal(float("inf"), bits)
    return 1 / denom


def dual_to_psi(n: int, w: Scalar, precision_bits: Optional[int] = None) -> PrecisionReal:
    """Inverse of transfer_dual: psi = (n+1) / (n (1 + 1/w)) - 1."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits, w)
    wv = _as_real(w, bits)
    if wv.sign() <= 0:
        raise DomainError("dual exponent must be positive")
    return PrecisionReal(n + 1, bits) / (n * (1 + 1 / wv)) - 1


class ClassicalN2(NamedTuple):
    jarnik: PrecisionReal
    laurent_lower: PrecisionReal
    laurent_upper: PrecisionReal


def classical_low_dim(
    lambda_hat: Scalar,
    lam: Scalar,
    precision_bits: Optional[int] = None,
) -> ClassicalN2:
    """n = 2 identities: Jarnik's uniform dual value and the two-sided
    ordinary dual bounds; the upper slot is +inf when its denominator
    is not positive."""
    bits = _resolve_bits(precision_bits, lambda_hat, lam)
    lh = _as_real(lambda_hat, bits)
    la = _as_real(lam, bits)
    half = PrecisionReal(1, bits) / 2
    if not (half <= lh <= la) or not lh < 1:
        raise DomainError("require 1/2 <= lambda_hat <= lambda and lambda_hat < 1")
    jarnik = 1 / (1 - lh)
    lower = (la + lh) / (1 - lh)
    den = lh - la + la * lh
    upper = PrecisionReal(float("inf"), bits) if den.sign() <= 0 else la / den
    return ClassicalN2(jarnik, lower, upper)


def lefths_solve(
    n: int,
    omega: Scalar,
    precision_bits: Optional[int] = None,
    tol: Scalar = DEFAULT_TOL,
) -> PrecisionReal:
    """Increasing-branch root of (1+t)(1+1/t)^n = (1+1/omega)(1+omega)^n.

    The left side decreases to its minimum at t = n then increases; the
    branch t >= n is the one matching the dual exponent's 2n-scale regime.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    bits = _resolve_bits(precision_bits, omega)
    om = _as_real(omega, bits)
    if om.sign() <= 0:
        raise DomainError("omega must be positive")
    rhs = (1 + 1 / om) * (1 + om) ** n

    def f(t: PrecisionReal) -> PrecisionReal:
        return (1 + t) * (1 + 1 / t) ** n - rhs

    t0 = PrecisionReal(n, bits)
    if f(t0).sign() >= 0:
        return t0  # right side at (or numerically at) the minimum
    hi = 2 * t0
    for _ in range(500):
        if f(hi).sign() > 0:
            break
        hi = 2 * hi
    else:
        raise NoRoot("no sign change above the branch point")
    return find_root(f, Bracket(t0, hi, -1, 1), tol)


def integer_approx_exponents(
    n: int,
    precision_bits: Optional[int] = None,
) -> Tuple[PrecisionReal, PrecisionReal]:
    """Exponent magnitudes (1/sigma_n + 1, n/Theta + 1) for algebraic-integer
    approximation, even n >= 4; the epsilon loss is the caller's concern."""
    if not isinstance(n, int) or n < 4 or n % 2:
        raise DomainError("n must be an even integer >= 4")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    s = sigma(n, bits)
    th = theta(bits)
    return (1 / s + 1, PrecisionReal(n, bits) / th + 1)


# -- per-n summary -------------------------------------------------------------


@dataclass(frozen=True)
class ConstantsReport:
    """All per-dimension constants; fields not defined for a given n are None."""

    n: int
    tau_n: Optional[PrecisionReal]
    sigma_n: Optional[PrecisionReal]
    w_n_aux: Optional[PrecisionReal]
    mu_n: Optional[PrecisionReal]
    regular_graph_bound: Optional[PrecisionReal]
    chi_estimate: Optional[PrecisionReal]
    theta: PrecisionReal
    laurent_bound: Optional[PrecisionReal]


def constants_report(
    n: int,
    precision_bits: Optional[int] = None,
    theta_value: Optional[PrecisionReal] = None,
) -> ConstantsReport:
    """One row of the constants table; sigma and the regular-graph bound
    exist for even n >= 4, tau for even n >= 2, the 2/(n+1) bound for odd n."""
    if not isinstance(n, int) or n < 2:
        raise DomainError("n must be an integer >= 2")
    bits = precision_bits or DEFAULT_PRECISION_BITS
    th = theta_value if theta_value is not None else theta(bits)
    w_n, mu_n = mu(n, bits)
    if n % 2 == 0:
        tau_n = tau(n, bits)
        big_enough = n >= 4
        return ConstantsReport(
            n=n,
            tau_n=tau_n,
            sigma_n=sigma(n, bits) if big_enough else None,
            w_n_aux=w_n,
            mu_n=mu_n,
            regular_graph_bound=regular_graph_lambda_bound(n, bits) if big_enough else None,
            chi_estimate=chi_estimate(n, bits) if big_enough else None,
            theta=th,
            laurent_bound=None,
        )
    return ConstantsReport(
        n=n,
        tau_n=None,
        sigma_n=None,
        w_n_aux=w_n,
        mu_n=mu_n,
        regular_graph_bound=None,
        chi_estimate=None,
        theta=th,
        laurent_bound=laurent_odd_bound(n, bits),
    )
