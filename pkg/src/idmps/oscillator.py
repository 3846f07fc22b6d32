"""Analytical MPS for an eigenstate of three coupled harmonic oscillators.

After decoupling, the target state carries all its excitation quanta in
one collective mode: n quanta along a unit direction (u1, u2, u3) in
the three-mode Fock space of frequency-omega_tilde ladder operators,
with the direction set by three mixing angles,

    u1 = sin(theta) cos(phi)
    u2 = sin(theta) sin(phi) cos(varphi) - cos(theta) sin(varphi)
    u3 = cos(theta) cos(varphi) + sin(theta) sin(phi) sin(varphi).

Expanding (u . adag)^n / sqrt(n!) applied to the scaled vacuum gives

    psi = sum_{a+l+b=n} sqrt(n!/(a! l! b!)) u1^a u2^l u3^b |a, l, b>

in scaled single-site eigenfunctions, which are then re-expanded in the
unscaled oscillator basis f_k through the overlap coefficients
C_{k,j} I_{k,j}. The bond spectra of the resulting three-site MPS are
the square roots of two binomial distributions: alpha_a with success
probability u1^2 across the first cut and gamma_b with u3^2 across the
second.

Everything here is real arithmetic; log-space accumulation keeps the
factorials finite.
"""

import functools
from dataclasses import dataclass
from math import comb, exp, factorial, lgamma, log, pi, sqrt

import numpy as np

from .errors import DegreeTooLarge, IndexOutOfRange, InsufficientNodes
from .mps import MatrixProductState, SiteTensor, to_dense
from .tensor import DenseTensor

#: Raw physicist's Hermite values overflow well before this; the
#: recurrence itself is exact in structure but float-limited.
MAX_HERMITE_DEGREE = 200

_QUAD_POINTS_DEFAULT = 64


@dataclass(frozen=True)
class OscillatorParams:
    """Inputs of the construction.

    ``n`` is the number of quanta in the collective mode, ``omega_tilde``
    the common scaled frequency of the decoupled modes, and the three
    angles fix the mode direction. ``phys_cutoff`` truncates each site's
    infinite basis to its first d functions; it must be at least n+1 so
    the bond structure fits.
    """

    n: int
    omega_tilde: float
    theta: float
    phi: float
    varphi: float
    phys_cutoff: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if not self.omega_tilde > 0.0:
            raise ValueError(f"omega_tilde must be > 0, got {self.omega_tilde}")
        if self.phys_cutoff < self.n + 1:
            raise ValueError(
                f"phys_cutoff must be >= n+1 = {self.n + 1}, got {self.phys_cutoff}"
            )


@dataclass(frozen=True)
class OscillatorMpsBundle:
    """The three element tables plus the assembled state.

    ``a1[k, a]``, ``a2[l, a, b]`` and ``a3[m, b]`` are the pure element
    tables (a2 is exactly symmetric in its lane indices and vanishes for
    a+b > n; a3 carries sqrt(gamma_b)). The assembled ``mps`` multiplies
    the site-2 slices by the collective-mode mixing weights, so
    contracting it yields the physical state.
    """

    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray
    mps: MatrixProductState
    params: OscillatorParams


def direction_cosines(params: OscillatorParams) -> tuple[float, float, float]:
    """Unit vector (u1, u2, u3) of the excited collective mode."""
    t, p, v = params.theta, params.phi, params.varphi
    u1 = np.sin(t) * np.cos(p)
    u2 = np.sin(t) * np.sin(p) * np.cos(v) - np.cos(t) * np.sin(v)
    u3 = np.cos(t) * np.cos(v) + np.sin(t) * np.sin(p) * np.sin(v)
    return float(u1), float(u2), float(u3)


def hermite(j: int, x):
    """Physicist's Hermite polynomial H_j via the three-term recurrence
    H_{j+1} = 2x H_j - 2j H_{j-1}. Accepts scalars or arrays."""
    if not 0 <= j <= MAX_HERMITE_DEGREE:
        raise DegreeTooLarge(f"degree must be in 0..{MAX_HERMITE_DEGREE}, got {j}")
    arr = np.asarray(x, dtype=float)
    h_prev = np.ones_like(arr)
    if j == 0:
        return h_prev if arr.ndim else float(h_prev)
    h = 2.0 * arr
    for m in range(1, j):
        h, h_prev = 2.0 * arr * h - 2.0 * m * h_prev, h
    return h if arr.ndim else float(h)


def _f_values(k_max: int, x) -> np.ndarray:
    """Orthonormal oscillator functions f_0..f_kmax at x, stacked on
    axis 0. Uses the normalized recurrence
    f_{k+1} = x sqrt(2/(k+1)) f_k - sqrt(k/(k+1)) f_{k-1},
    which stays bounded where e^{-x^2/2} H_k would overflow."""
    arr = np.asarray(x, dtype=float)
    out = np.empty((k_max + 1,) + arr.shape, dtype=float)
    out[0] = pi ** -0.25 * np.exp(-(arr**2) / 2.0)
    if k_max >= 1:
        out[1] = sqrt(2.0) * arr * out[0]
    for k in range(1, k_max):
        out[k + 1] = arr * sqrt(2.0 / (k + 1)) * out[k] - sqrt(k / (k + 1.0)) * out[k - 1]
    return out


def basis_f(i_site: int, k: int, x):
    """Value of the k-th orthonormal oscillator basis function
    f_k(x) = e^{-x^2/2} H_k(x) / sqrt(2^k k! sqrt(pi)); the site index
    only labels which coordinate the argument is."""
    if i_site not in (1, 2, 3):
        raise ValueError(f"site label must be 1, 2 or 3, got {i_site}")
    if not 0 <= k <= MAX_HERMITE_DEGREE:
        raise DegreeTooLarge(f"degree must be in 0..{MAX_HERMITE_DEGREE}, got {k}")
    vals = _f_values(k, x)[k]
    return vals if np.ndim(x) else float(vals)


def coeff_C(i: int, j: int, omega_tilde: float) -> float:
    """Normalization factor sqrt(sqrt(w) / (pi 2^i 2^j i! j!)),
    evaluated in log space so large i, j stay finite."""
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    ln = 0.25 * log(omega_tilde) - 0.5 * (
        log(pi) + (i + j) * log(2.0) + lgamma(i + 1) + lgamma(j + 1)
    )
    return exp(ln)


def integral_I_closed(i: int, j: int, omega_tilde: float) -> float:
    """Closed form of I_{i,j} = int e^{-(1+w)x^2/2} H_i(x) H_j(sqrt(w) x) dx.

    Differentiating the generating function
    I(s,t) = sqrt(2 pi/(1+w)) exp(2(sqrt(w) t + s)^2/(1+w) - s^2 - t^2)
    i times in s and j times in t collapses to a single finite sum over
    r with r = i = j (mod 2), r <= min(i,j), q = (i-r)/2, p = (j-r)/2:

        I_{i,j} = sqrt(2 pi/(1+w)) * sum_r i! j! / (p! q! r!)
                  * (-1)^p (1-w)^{p+q} (4 sqrt(w))^r / (1+w)^{p+q+r}.

    Entries of opposite parity are exactly zero.
    """
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    if (i + j) % 2:
        return 0.0
    w = omega_tilde
    one_minus = 1.0 - w
    ln_base = lgamma(i + 1) + lgamma(j + 1)
    ln_pow_r = log(4.0) + 0.5 * log(w)
    ln_denom = log(1.0 + w)
    total = 0.0
    for r in range(i % 2, min(i, j) + 1, 2):
        q, p = (i - r) // 2, (j - r) // 2
        if one_minus == 0.0 and p + q > 0:
            continue
        ln_mag = ln_base - lgamma(p + 1) - lgamma(q + 1) - lgamma(r + 1)
        ln_mag += r * ln_pow_r - (p + q + r) * ln_denom
        if p + q:
            ln_mag += (p + q) * log(abs(one_minus))
        sign = -1.0 if (p + (p + q) * (one_minus < 0.0)) % 2 else 1.0
        total += sign * exp(ln_mag)
    return sqrt(2.0 * pi / (1.0 + w)) * total


def _hermite_extended(j: int, x: np.ndarray) -> np.ndarray:
    """H_j on an array, preserving the array's float precision."""
    h_prev = np.ones_like(x)
    if j == 0:
        return h_prev
    h = 2.0 * x
    for m in range(1, j):
        h, h_prev = 2.0 * x * h - 2.0 * m * h_prev, h
    return h


@functools.lru_cache(maxsize=16)
def _hermgauss(points: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes and weights at extended precision.

    Entries of large degree gap nearly cancel across the rule (the
    term-magnitude sum can exceed the integral by ~1e9), so double
    precision nodes cap the achievable accuracy near 1e-7. Newton steps
    on H_n from the double-precision seeds push nodes and weights to
    the platform's long-double precision, which the evaluation keeps.
    """
    seeds, _ = np.polynomial.hermite.hermgauss(points)
    x = seeds.astype(np.longdouble)
    for _ in range(3):
        h = _hermite_extended(points, x)
        hp = 2.0 * points * _hermite_extended(points - 1, x)
        x = x - h / hp
    # enforce exact +/- node symmetry so odd integrands cancel to 0.0
    x = (x - x[::-1]) / 2.0
    h_below = _hermite_extended(points - 1, x)
    # weights: 2^(n-1) n! sqrt(pi) / (n H_{n-1}(x))^2
    weights = (
        np.longdouble(2.0) ** (points - 1)
        * np.longdouble(factorial(points))
        * np.sqrt(np.longdouble(pi))
        / (np.longdouble(points) * h_below) ** 2
    )
    return x, weights


def integral_I_quadrature(
    i: int, j: int, omega_tilde: float, points: int = _QUAD_POINTS_DEFAULT
) -> float:
    """Gauss-Hermite evaluation of the same integral, as an independent
    check on the closed form.

    Substituting y = x sqrt((1+w)/2) turns the weight into e^{-y^2}
    with a polynomial integrand of degree i+j, so ``points`` nodes are
    exact once 2*points - 1 >= i + j; the whole rule runs in long
    double so near-cancelling entries keep ~1e-10 relative accuracy.
    """
    if i < 0 or j < 0:
        raise ValueError(f"indices must be >= 0, got ({i}, {j})")
    if 2 * points < i + j + 2:
        raise InsufficientNodes(
            f"{points} nodes cannot integrate degree {i + j}; need at least (i+j)/2 + 1"
        )
    if i > MAX_HERMITE_DEGREE or j > MAX_HERMITE_DEGREE:
        raise DegreeTooLarge(f"degrees must be <= {MAX_HERMITE_DEGREE}, got ({i}, {j})")
    nodes, weights = _hermgauss(points)
    w = np.longdouble(omega_tilde)
    scale = np.sqrt((1.0 + w) / 2.0)
    x = nodes / scale
    vals = _hermite_extended(i, x) * _hermite_extended(j, np.sqrt(w) * x)
    terms = weights * vals
    # fold mirror nodes together first: odd-parity integrands then
    # cancel term by term, leaving an exact 0.0
    half = points // 2
    total = np.sum(terms[:half] + terms[::-1][:half])
    if points % 2:
        total += terms[half]
    return float(total / scale)


def _check_lane(idx: int, n: int, name: str) -> None:
    if not 0 <= idx <= n:
        raise IndexOutOfRange(f"{name} must be in 0..{n}, got {idx}")


def alpha(a: int, params: OscillatorParams) -> float:
    """Squared Schmidt coefficient across the (1):(2,3) cut: the
    binomial weight of putting a quanta into mode 1."""
    _check_lane(a, params.n, "a")
    u1, _, _ = direction_cosines(params)
    p = u1 * u1
    return comb(params.n, a) * p**a * (1.0 - p) ** (params.n - a)


def gamma(b: int, params: OscillatorParams) -> float:
    """Squared Schmidt coefficient across the (1,2):(3) cut: the
    binomial weight of putting b quanta into mode 3."""
    _check_lane(b, params.n, "b")
    _, _, u3 = direction_cosines(params)
    p = u3 * u3
    return comb(params.n, b) * p**b * (1.0 - p) ** (params.n - b)


def _overlap_table(d: int, n_lanes: int, w: float) -> np.ndarray:
    """Matrix of overlap elements C_{k,j} I_{k,j} for k < d, j < n_lanes."""
    out = np.zeros((d, n_lanes))
    for k in range(d):
        for j in range(n_lanes):
            out[k, j] = coeff_C(k, j, w) * integral_I_closed(k, j, w)
    return out


def _mixing_weights(params: OscillatorParams) -> np.ndarray:
    """Site-2 assembly weights w[a, b] distributing the collective-mode
    multinomial over the bond lanes.

    With nu3 = sqrt(1 - u3^2), c1 = u1/nu3, c2 = u2/nu3:
    w[a, b] = sqrt(binom(n-b, a)) c1^a c2^{n-a-b} sign(u3)^b for
    a+b <= n, else 0. Combined with the sqrt(gamma_b) carried by site 3
    this reproduces sqrt(n!/(a! l! b!)) u1^a u2^l u3^b lane by lane.
    """
    n = params.n
    u1, u2, u3 = direction_cosines(params)
    nu3 = sqrt(max(1.0 - u3 * u3, 0.0))
    if nu3 > 1e-150:
        c1, c2 = u1 / nu3, u2 / nu3
    else:
        c1 = c2 = 0.0  # pole: only the (a, b) = (0, n) lane survives
    sgn3 = 1.0 if u3 >= 0.0 else -1.0
    out = np.zeros((n + 1, n + 1))
    for a in range(n + 1):
        for b in range(n + 1 - a):
            out[a, b] = sqrt(comb(n - b, a)) * c1**a * c2 ** (n - a - b) * sgn3**b
    return out


def build_bundle(params: OscillatorParams) -> OscillatorMpsBundle:
    """Build the element tables and assemble the three-site MPS.

    a1[k, a] = C_{k,a} I_{k,a}; a2[l, a, b] = C I at index n-a-b where
    a+b <= n (exactly symmetric); a3[m, b] = sqrt(gamma_b) C_{m,b} I_{m,b}.
    Site 2 of the assembled state additionally carries the mixing
    weights, so its bond spectra are sorted sqrt(alpha) and sqrt(gamma)
    once the basis cutoff resolves the state.
    """
    n, d, w = params.n, params.phys_cutoff, params.omega_tilde
    ci = _overlap_table(d, n + 1, w)
    a1 = ci.copy()
    a2 = np.zeros((d, n + 1, n + 1))
    for a in range(n + 1):
        for b in range(n + 1 - a):
            a2[:, a, b] = ci[:, n - a - b]
    gammas = np.array([gamma(b, params) for b in range(n + 1)])
    a3 = ci * np.sqrt(gammas)[None, :]
    weights = _mixing_weights(params)
    sites = (
        SiteTensor(d, 1, n + 1, a1.reshape(d, 1, n + 1)),
        SiteTensor(d, n + 1, n + 1, a2 * weights[None, :, :]),
        SiteTensor(d, n + 1, 1, a3.reshape(d, n + 1, 1)),
    )
    mps = MatrixProductState(sites=sites, form="unknown")
    return OscillatorMpsBundle(a1=a1, a2=a2, a3=a3, mps=mps, params=params)


def wavefunction_mps(bundle: OscillatorMpsBundle, x1: float, x2: float, x3: float) -> float:
    """Evaluate the assembled MPS against the basis functions at one point."""
    d = bundle.params.phys_cutoff
    f1 = _f_values(d - 1, np.asarray(x1, dtype=float))
    f2 = _f_values(d - 1, np.asarray(x2, dtype=float))
    f3 = _f_values(d - 1, np.asarray(x3, dtype=float))
    g1, g2, g3 = (s.as_array().real for s in bundle.mps.sites)
    v = f1 @ g1[:, 0, :]
    mid = np.einsum("k,kab->ab", f2, g2)
    return float(v @ mid @ (f3 @ g3[:, :, 0]))


def _scaled_f(j_max: int, x: float, w: float) -> np.ndarray:
    """Frequency-w eigenfunctions up to j_max at x: w^(1/4) f_j(sqrt(w) x)."""
    return w**0.25 * _f_values(j_max, np.asarray(sqrt(w) * x, dtype=float))


def wavefunction_direct(
    params: OscillatorParams, x1: float, x2: float, x3: float, route: str = "alpha"
) -> float:
    """Evaluate the state from its Schmidt sum, independent of the MPS.

    route="alpha" groups (1):(2,3) and sums over the mode-1 occupation;
    route="gamma" groups (1,2):(3). Both are exact and agree to
    roundoff; the basis cutoff never enters.
    """
    n, w = params.n, params.omega_tilde
    u1, u2, u3 = direction_cosines(params)
    p1 = _scaled_f(n, x1, w)
    p2 = _scaled_f(n, x2, w)
    p3 = _scaled_f(n, x3, w)
    total = 0.0
    if route == "alpha":
        nu1 = sqrt(max(1.0 - u1 * u1, 0.0))
        c2, c3 = (u2 / nu1, u3 / nu1) if nu1 > 1e-150 else (0.0, 0.0)
        for a in range(n + 1):
            inner = sum(
                sqrt(comb(n - a, l)) * c2**l * c3 ** (n - a - l) * p2[l] * p3[n - a - l]
                for l in range(n - a + 1)
            )
            total += sqrt(comb(n, a)) * u1**a * nu1 ** (n - a) * p1[a] * inner
    elif route == "gamma":
        nu3 = sqrt(max(1.0 - u3 * u3, 0.0))
        c1, c2 = (u1 / nu3, u2 / nu3) if nu3 > 1e-150 else (0.0, 0.0)
        for b in range(n + 1):
            inner = sum(
                sqrt(comb(n - b, a)) * c1**a * c2 ** (n - b - a) * p1[a] * p2[n - b - a]
                for a in range(n - b + 1)
            )
            total += sqrt(comb(n, b)) * u3**b * nu3 ** (n - b) * p3[b] * inner
    else:
        raise ValueError(f"route must be 'alpha' or 'gamma', got {route!r}")
    return float(total)


def element_decay_table(bundle: OscillatorMpsBundle, which: str) -> list[dict]:
    """Magnitude of each table element versus its physical index.

    One row per (lane, physical index) with keys which / a / b / k /
    magnitude; lanes that are identically zero are omitted. This is the
    data behind the element-decay plots.
    """
    n, d = bundle.params.n, bundle.params.phys_cutoff
    rows: list[dict] = []
    if which == "A1":
        for a in range(n + 1):
            for k in range(d):
                rows.append(
                    {"which": "A1", "a": a, "b": None, "k": k, "magnitude": float(abs(bundle.a1[k, a]))}
                )
    elif which == "A2":
        for a in range(n + 1):
            for b in range(n + 1 - a):
                for l in range(d):
                    rows.append(
                        {"which": "A2", "a": a, "b": b, "k": l, "magnitude": float(abs(bundle.a2[l, a, b]))}
                    )
    elif which == "A3":
        gammas = [gamma(b, bundle.params) for b in range(n + 1)]
        for b in range(n + 1):
            if gammas[b] == 0.0:
                continue
            for m in range(d):
                rows.append(
                    {"which": "A3", "a": None, "b": b, "k": m, "magnitude": float(abs(bundle.a3[m, b]))}
                )
    else:
        raise ValueError(f"which must be 'A1', 'A2' or 'A3', got {which!r}")
    return rows


def oscillator_dense(bundle: OscillatorMpsBundle) -> DenseTensor:
    """Convenience: the assembled state as a dense (d, d, d) tensor."""
    return to_dense(bundle.mps)
