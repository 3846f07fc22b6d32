"""Matrix product states over open boundary chains.

A state tensor c_{k1..kN} is represented by N three-index site tensors
M^{(k_n)}_{a_{n-1}, a_n} (bond index 0 of size 1 at both ends) with
optional per-bond weight vectors. Four constructions are provided:

* right-canonical: sites 2..N right-normalized, site 1 carries weights;
* left-canonical: sites 1..N-1 left-normalized, site N carries weights;
* mixed-canonical: left-normalized through a center site, a diagonal
  weight vector at the center bond, right-normalized after;
* canonical (Vidal): weight-free site tensors alternating with bond
  weight vectors such that every bond's weights are that bipartition's
  Schmidt coefficients.

All constructions are reshape+SVD sweeps; without truncation they
reproduce the input to working precision, and the bond->Schmidt
identifications hold at every cut.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import (
    CenterOutOfRange,
    CutOutOfRange,
    DimChainBroken,
    FormMismatch,
    IndexOutOfRange,
    LengthMismatch,
    PolicyEmpty,
    ShapeMismatch,
    ZeroState,
)
from .schmidt import entropy_from_values, schmidt_decompose
from .tensor import DEFAULT_RANK_TOL, DenseTensor, low_rank_error, svd, tensor_new

FORMS = ("left", "right", "mixed", "vidal", "unknown")


@dataclass(frozen=True)
class SiteTensor:
    """One site's three-index block M^{(k)}_{a_left, a_right}.

    ``data`` is flat with entry (k, a_left, a_right) at index
    (k * left_dim + a_left) * right_dim + a_right.
    """

    phys_dim: int
    left_dim: int
    right_dim: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if min(self.phys_dim, self.left_dim, self.right_dim) < 1:
            raise ShapeMismatch(
                f"site dims must be >= 1, got ({self.phys_dim}, {self.left_dim}, {self.right_dim})"
            )
        flat = np.asarray(self.data, dtype=complex).reshape(-1)
        expected = self.phys_dim * self.left_dim * self.right_dim
        if flat.size != expected:
            raise ShapeMismatch(f"site data length {flat.size}, expected {expected}")
        object.__setattr__(self, "data", flat)

    def as_array(self) -> np.ndarray:
        """The block as an array of shape (phys_dim, left_dim, right_dim)."""
        return self.data.reshape(self.phys_dim, self.left_dim, self.right_dim)


@dataclass(frozen=True)
class BondSpectrum:
    """Positive, nonincreasing weight vector sitting on one bond."""

    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        if vals.size == 0 or np.any(vals <= 0.0):
            raise ValueError("bond spectrum must be nonempty and strictly positive")
        if np.any(np.diff(vals) > 0.0):
            raise ValueError("bond spectrum must be nonincreasing")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class TruncationPolicy:
    """Per-cut truncation rule: cap the bond at ``max_bond`` values and/or
    drop the largest tail whose discarded weight sqrt(sum lambda^2) stays
    <= ``weight_tol``. At least one field must be set."""

    max_bond: int | None = None
    weight_tol: float | None = None

    def __post_init__(self) -> None:
        if self.max_bond is None and self.weight_tol is None:
            raise PolicyEmpty("set max_bond and/or weight_tol")
        if self.max_bond is not None and self.max_bond < 1:
            raise ValueError(f"max_bond must be >= 1, got {self.max_bond}")
        if self.weight_tol is not None and self.weight_tol < 0.0:
            raise ValueError(f"weight_tol must be >= 0, got {self.weight_tol}")


@dataclass(frozen=True)
class MatrixProductState:
    """Immutable open-boundary MPS.

    ``bonds`` is either None or an (N-1)-tuple whose entry n-1 is the
    weight vector on bond n (None where no weights sit, e.g. away from
    the center of a mixed-canonical state). The ``form`` tag records how
    the state was built; it is verified by the verify_* operations,
    never assumed.
    """

    sites: tuple[SiteTensor, ...]
    bonds: tuple[BondSpectrum | None, ...] | None = None
    form: str = "unknown"
    center: int | None = None

    def __post_init__(self) -> None:
        sites = tuple(self.sites)
        object.__setattr__(self, "sites", sites)
        if not sites:
            raise ShapeMismatch("an MPS needs at least one site")
        if sites[0].left_dim != 1 or sites[-1].right_dim != 1:
            raise DimChainBroken(
                f"boundary dims must be 1, got left {sites[0].left_dim}, right {sites[-1].right_dim}"
            )
        for n in range(len(sites) - 1):
            if sites[n].right_dim != sites[n + 1].left_dim:
                raise DimChainBroken(
                    f"bond {n + 1}: right_dim {sites[n].right_dim} != left_dim {sites[n + 1].left_dim}"
                )
        if self.bonds is not None:
            bonds = tuple(self.bonds)
            object.__setattr__(self, "bonds", bonds)
            if len(bonds) != len(sites) - 1:
                raise DimChainBroken(f"expected {len(sites) - 1} bonds, got {len(bonds)}")
            for n, spec in enumerate(bonds):
                if spec is not None and spec.values.size != sites[n].right_dim:
                    raise DimChainBroken(
                        f"bond {n + 1} has {spec.values.size} weights for dimension {sites[n].right_dim}"
                    )
        if self.form not in FORMS:
            raise ValueError(f"unknown form tag {self.form!r}")
        if self.form == "mixed":
            if self.center is None or not 1 <= self.center <= len(sites) - 1:
                raise ValueError(f"mixed form needs a center in 1..{len(sites) - 1}")

    @property
    def num_sites(self) -> int:
        return len(self.sites)

    @property
    def phys_dims(self) -> tuple[int, ...]:
        return tuple(s.phys_dim for s in self.sites)

    @property
    def bond_dims(self) -> tuple[int, ...]:
        return tuple(s.right_dim for s in self.sites[:-1])


@dataclass(frozen=True)
class NormalizationReport:
    """Per-site gauge residuals for one normalization condition.

    ``residuals[n-1]`` is site n's deviation from the isometry condition;
    for the boundary site (which carries the state's weight instead) the
    entry is |boundary_scalar - 1| and only counts toward ``passed``
    when the caller asserted a normalized state. ``boundary_scalar``
    equals the squared state norm for freshly constructed forms.
    """

    residuals: tuple[float, ...]
    worst_site: int
    passed: bool
    boundary_site: int
    boundary_scalar: float
    tol: float


@dataclass(frozen=True)
class VidalReport:
    """verify_vidal outcome: worst orthonormality residual per cut."""

    passed: bool
    residuals: tuple[float, ...]
    tol: float


def _policy_keep(s: np.ndarray, policy: TruncationPolicy | None) -> int:
    """Number of values to retain from a nonincreasing list under ``policy``."""
    keep = int(s.size)
    if policy is None:
        return keep
    if policy.max_bond is not None:
        keep = min(keep, policy.max_bond)
    if policy.weight_tol is not None:
        tails = np.sqrt(np.cumsum(s[::-1] ** 2))[::-1]  # tails[k] = ||s[k:]||
        allowed = np.nonzero(tails <= policy.weight_tol)[0]
        keep = min(keep, int(allowed[0]) if allowed.size else int(s.size))
    return max(keep, 1)


def _check_nonzero(t: DenseTensor) -> None:
    if not np.any(t.data):
        raise ZeroState("cannot decompose the zero tensor")


def _single_site(t: DenseTensor, form: str, with_bonds: bool) -> MatrixProductState:
    site = SiteTensor(t.shape[0], 1, 1, t.data)
    return MatrixProductState(
        sites=(site,), bonds=() if with_bonds else None, form=form
    )


def _right_sweep(
    t: DenseTensor, policy: TruncationPolicy | None, rank_tol: float
) -> tuple[list[SiteTensor], list[float]]:
    """SVD sweep from site N to 2; returns sites plus per-cut discarded weights."""
    shape = t.shape
    n_sites = len(shape)
    sites: list[SiteTensor] = [None] * n_sites  # type: ignore[list-item]
    errors = [0.0] * (n_sites - 1)
    m = t.data
    right = 1
    for n in range(n_sites, 1, -1):
        rows = prod(shape[: n - 1])
        res = svd(m.reshape(rows, shape[n - 1] * right), rank_tol)
        keep = _policy_keep(res.s, policy)
        errors[n - 2] = low_rank_error(res.s, keep)
        vh = res.vh[:keep]
        block = vh.reshape(keep, shape[n - 1], right).transpose(1, 0, 2)
        sites[n - 1] = SiteTensor(shape[n - 1], keep, right, block.reshape(-1))
        m = res.u[:, :keep] * res.s[:keep]
        right = keep
    sites[0] = SiteTensor(shape[0], 1, right, m.reshape(-1))
    return sites, errors


def _left_sweep(
    t: DenseTensor, policy: TruncationPolicy | None, rank_tol: float
) -> tuple[list[SiteTensor], list[float]]:
    """Mirror sweep from site 1 to N-1; residual weights land on site N."""
    shape = t.shape
    n_sites = len(shape)
    sites: list[SiteTensor] = [None] * n_sites  # type: ignore[list-item]
    errors = [0.0] * (n_sites - 1)
    m = t.data
    left = 1
    for n in range(1, n_sites):
        cols = prod(shape[n:])
        res = svd(m.reshape(left * shape[n - 1], cols), rank_tol)
        keep = _policy_keep(res.s, policy)
        errors[n - 1] = low_rank_error(res.s, keep)
        u = res.u[:, :keep]
        block = u.reshape(left, shape[n - 1], keep).transpose(1, 0, 2)
        sites[n - 1] = SiteTensor(shape[n - 1], left, keep, block.reshape(-1))
        m = res.s[:keep, None] * res.vh[:keep]
        left = keep
    sites[-1] = SiteTensor(shape[-1], left, 1, m.T.reshape(-1))
    return sites, errors


def from_dense_right_canonical(
    t: DenseTensor,
    policy: TruncationPolicy | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> MatrixProductState:
    """Right-canonical MPS: sites 2..N right-normalized, site 1 carries
    the residual weights (its squared norm is the squared state norm)."""
    _check_nonzero(t)
    if t.ndim == 1:
        return _single_site(t, "right", with_bonds=False)
    sites, _ = _right_sweep(t, policy, rank_tol)
    return MatrixProductState(sites=tuple(sites), form="right")


def from_dense_left_canonical(
    t: DenseTensor,
    policy: TruncationPolicy | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> MatrixProductState:
    """Left-canonical MPS: sites 1..N-1 left-normalized, site N carries
    the residual weights."""
    _check_nonzero(t)
    if t.ndim == 1:
        return _single_site(t, "left", with_bonds=False)
    sites, _ = _left_sweep(t, policy, rank_tol)
    return MatrixProductState(sites=tuple(sites), form="left")


def from_dense_mixed_canonical(
    t: DenseTensor,
    center: int,
    policy: TruncationPolicy | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> MatrixProductState:
    """Mixed-canonical MPS with the weight vector on bond ``center``.

    Sites 1..center come out left-normalized, sites center+1..N
    right-normalized, and the center bond weights are the Schmidt
    coefficients of the (1..center):(center+1..N) bipartition.
    """
    _check_nonzero(t)
    shape = t.shape
    n_sites = len(shape)
    if n_sites < 3 or not 2 <= center <= n_sites - 1:
        raise CenterOutOfRange(f"center must be in 2..{max(n_sites - 1, 2)} with N >= 3, got {center}")
    # Right sweep down to center+1, leaving the carried block on the left.
    sites: list[SiteTensor] = [None] * n_sites  # type: ignore[list-item]
    m = t.data
    right = 1
    for n in range(n_sites, center, -1):
        rows = prod(shape[: n - 1])
        res = svd(m.reshape(rows, shape[n - 1] * right), rank_tol)
        keep = _policy_keep(res.s, policy)
        vh = res.vh[:keep]
        block = vh.reshape(keep, shape[n - 1], right).transpose(1, 0, 2)
        sites[n - 1] = SiteTensor(shape[n - 1], keep, right, block.reshape(-1))
        m = res.u[:, :keep] * res.s[:keep]
        right = keep
    # Left sweep over the carried block, which is a (d_1..d_center, right) tensor.
    left = 1
    for n in range(1, center):
        cols = prod(shape[n:center]) * right
        res = svd(m.reshape(left * shape[n - 1], cols), rank_tol)
        keep = _policy_keep(res.s, policy)
        u = res.u[:, :keep]
        block = u.reshape(left, shape[n - 1], keep).transpose(1, 0, 2)
        sites[n - 1] = SiteTensor(shape[n - 1], left, keep, block.reshape(-1))
        m = res.s[:keep, None] * res.vh[:keep]
        left = keep
    res = svd(m.reshape(left * shape[center - 1], right), rank_tol)
    keep = _policy_keep(res.s, policy)
    u = res.u[:, :keep]
    block = u.reshape(left, shape[center - 1], keep).transpose(1, 0, 2)
    sites[center - 1] = SiteTensor(shape[center - 1], left, keep, block.reshape(-1))
    weights = res.s[:keep]
    # Absorb vh into the right block; its orthonormal rows keep that block
    # right-normalized.
    nxt = sites[center].as_array()
    merged = np.einsum("ab,kbc->kac", res.vh[:keep], nxt)
    sites[center] = SiteTensor(
        sites[center].phys_dim, keep, sites[center].right_dim, merged.reshape(-1)
    )
    bonds: list[BondSpectrum | None] = [None] * (n_sites - 1)
    bonds[center - 1] = BondSpectrum(weights)
    return MatrixProductState(
        sites=tuple(sites), bonds=tuple(bonds), form="mixed", center=center
    )


def _vidal_sweep(
    t: DenseTensor, policy: TruncationPolicy | None, rank_tol: float
) -> tuple[list[SiteTensor], list[BondSpectrum], list[float]]:
    """Left-to-right sweep producing weight-free site tensors by dividing
    each left bond's weights back out; every bond keeps its own Schmidt
    coefficients."""
    shape = t.shape
    n_sites = len(shape)
    sites: list[SiteTensor] = [None] * n_sites  # type: ignore[list-item]
    bonds: list[BondSpectrum] = [None] * (n_sites - 1)  # type: ignore[list-item]
    errors = [0.0] * (n_sites - 1)
    m = t.data
    left = 1
    lam_prev: np.ndarray | None = None
    for n in range(1, n_sites):
        cols = prod(shape[n:])
        res = svd(m.reshape(left * shape[n - 1], cols), rank_tol)
        keep = _policy_keep(res.s, policy)
        errors[n - 1] = low_rank_error(res.s, keep)
        u = res.u[:, :keep].reshape(left, shape[n - 1], keep)
        if lam_prev is not None:
            u = u / lam_prev[:, None, None]
        sites[n - 1] = SiteTensor(shape[n - 1], left, keep, u.transpose(1, 0, 2).reshape(-1))
        bonds[n - 1] = BondSpectrum(res.s[:keep])
        m = res.s[:keep, None] * res.vh[:keep]
        lam_prev = res.s[:keep]
        left = keep
    tail = (m / lam_prev[:, None]).T  # the final vh block, weights divided back out
    sites[-1] = SiteTensor(shape[-1], left, 1, tail.reshape(-1))
    return sites, bonds, errors


def from_dense_vidal(
    t: DenseTensor,
    policy: TruncationPolicy | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> MatrixProductState:
    """Canonical-form MPS: every bond carries that cut's Schmidt
    coefficients and the site tensors are weight-free."""
    _check_nonzero(t)
    if t.ndim == 1:
        return _single_site(t, "vidal", with_bonds=True)
    sites, bonds, _ = _vidal_sweep(t, policy, rank_tol)
    return MatrixProductState(sites=tuple(sites), bonds=tuple(bonds), form="vidal")


def to_dense(m: MatrixProductState) -> DenseTensor:
    """Contract the chain (including any bond weights) back to a tensor."""
    acc = m.sites[0].as_array()[:, 0, :]
    if m.bonds and m.bonds[0] is not None:
        acc = acc * m.bonds[0].values
    for n in range(1, m.num_sites):
        acc = np.tensordot(acc, m.sites[n].as_array(), axes=([-1], [1]))
        if m.bonds and n < m.num_sites - 1 and m.bonds[n] is not None:
            acc = acc * m.bonds[n].values
    return tensor_new(m.phys_dims, acc.reshape(-1))


def site_left_residual(site: SiteTensor) -> float:
    """Deviation of sum_k M^(k)+ M^(k) from the identity."""
    g = site.as_array()
    gram = np.einsum("kab,kac->bc", g.conj(), g)
    return float(np.max(np.abs(gram - np.eye(site.right_dim))))


def site_right_residual(site: SiteTensor) -> float:
    """Deviation of sum_k M^(k) M^(k)+ from the identity."""
    g = site.as_array()
    gram = np.einsum("kab,kcb->ac", g, g.conj())
    return float(np.max(np.abs(gram - np.eye(site.left_dim))))


def _normalization_report(
    m: MatrixProductState,
    residual_of,
    boundary_site: int,
    tol: float,
    assume_normalized: bool,
) -> NormalizationReport:
    n_sites = m.num_sites
    scalar = float(np.sum(np.abs(m.sites[boundary_site - 1].data) ** 2))
    residuals = []
    for n in range(1, n_sites + 1):
        if n == boundary_site:
            residuals.append(abs(scalar - 1.0))
        else:
            residuals.append(residual_of(m.sites[n - 1]))
    counted = [n for n in range(1, n_sites + 1) if n != boundary_site]
    if assume_normalized:
        counted.append(boundary_site)
    if counted:
        worst = max(counted, key=lambda n: residuals[n - 1])
        passed = residuals[worst - 1] <= tol
    else:
        worst = boundary_site
        passed = True
    return NormalizationReport(
        residuals=tuple(residuals),
        worst_site=worst,
        passed=passed,
        boundary_site=boundary_site,
        boundary_scalar=scalar,
        tol=tol,
    )


def verify_left_normalized(
    m: MatrixProductState, tol: float = 1e-10, assume_normalized: bool = False
) -> NormalizationReport:
    """Check sites 1..N-1 against the left isometry condition.

    Site N carries the weights; its squared norm is reported as the
    boundary scalar and compared against 1 only when
    ``assume_normalized`` is set.
    """
    return _normalization_report(m, site_left_residual, m.num_sites, tol, assume_normalized)


def verify_right_normalized(
    m: MatrixProductState, tol: float = 1e-10, assume_normalized: bool = False
) -> NormalizationReport:
    """Check sites 2..N against the right isometry condition; site 1
    carries the weights (see verify_left_normalized)."""
    return _normalization_report(m, site_right_residual, 1, tol, assume_normalized)


def verify_vidal(m: MatrixProductState, tol: float = 1e-8) -> VidalReport:
    """Verify the canonical-form property cut by cut.

    For each cut the weighted chain contractions from both ends must
    yield orthonormal vector families; the reported residual is the
    worse of the two Gram deviations. States with fewer than two cuts
    have no cross-bond coupling, so a lone weight vector there is only
    constrained by the families' orthonormality.
    """
    if m.form != "vidal":
        raise FormMismatch(f"expected a vidal-form state, got {m.form!r}")
    if m.bonds is None or any(b is None for b in m.bonds):
        raise FormMismatch("vidal form needs a weight vector on every bond")
    n_sites = m.num_sites
    if n_sites == 1:
        return VidalReport(passed=True, residuals=(), tol=tol)
    lams = [b.values for b in m.bonds]  # type: ignore[union-attr]
    left_res = [0.0] * (n_sites - 1)
    gram = np.ones((1, 1), dtype=complex)
    for n in range(1, n_sites):
        g = m.sites[n - 1].as_array()
        w = g if n == 1 else g * lams[n - 2][None, :, None]
        gram = np.einsum("kca,cd,kdb->ab", w.conj(), gram, w)
        left_res[n - 1] = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    right_res = [0.0] * (n_sites - 1)
    gram = np.ones((1, 1), dtype=complex)
    for n in range(n_sites, 1, -1):
        g = m.sites[n - 1].as_array()
        w = g if n == n_sites else g * lams[n - 1][None, None, :]
        gram = np.einsum("kac,cd,kbd->ab", w.conj(), gram, w)
        right_res[n - 2] = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    residuals = tuple(max(l, r) for l, r in zip(left_res, right_res))
    return VidalReport(passed=all(r <= tol for r in residuals), residuals=residuals, tol=tol)


def truncate(
    m: MatrixProductState, policy: TruncationPolicy | None
) -> tuple[MatrixProductState, list[float]]:
    """Apply ``policy`` at every cut; returns the truncated state and the
    per-cut discarded weights sqrt(sum of dropped lambda^2).

    A canonical-form input is sliced in place (each bond's stored
    spectrum decides what is dropped); anything else goes through a
    dense round trip and comes back in canonical form. The result keeps
    at least one value per bond.
    """
    if policy is None:
        raise PolicyEmpty("truncate needs a policy")
    if m.form == "vidal" and m.bonds is not None and all(b is not None for b in m.bonds):
        if m.num_sites == 1:
            return m, []
        lams = [b.values for b in m.bonds]  # type: ignore[union-attr]
        keeps = [_policy_keep(lam, policy) for lam in lams]
        errors = [low_rank_error(lam, keep) for lam, keep in zip(lams, keeps)]
        sites = []
        for n, site in enumerate(m.sites):
            lkeep = keeps[n - 1] if n > 0 else 1
            rkeep = keeps[n] if n < m.num_sites - 1 else 1
            block = site.as_array()[:, :lkeep, :rkeep]
            sites.append(SiteTensor(site.phys_dim, lkeep, rkeep, block.reshape(-1)))
        bonds = tuple(BondSpectrum(lam[:keep]) for lam, keep in zip(lams, keeps))
        return (
            MatrixProductState(sites=tuple(sites), bonds=bonds, form="vidal"),
            errors,
        )
    t = to_dense(m)
    _check_nonzero(t)
    if t.ndim == 1:
        return _single_site(t, "vidal", with_bonds=True), []
    sites, bonds, errors = _vidal_sweep(t, policy, DEFAULT_RANK_TOL)
    return (
        MatrixProductState(sites=tuple(sites), bonds=tuple(bonds), form="vidal"),
        errors,
    )


def bond_spectrum(m: MatrixProductState, cut: int) -> BondSpectrum:
    """Schmidt coefficients across bond ``cut`` (1..N-1).

    Uses the stored weights when the form provides them at that cut;
    otherwise re-derives them through a dense round trip.
    """
    if not 1 <= cut <= m.num_sites - 1:
        raise CutOutOfRange(f"cut must be in 1..{m.num_sites - 1}, got {cut}")
    if m.bonds is not None and m.bonds[cut - 1] is not None:
        if m.form == "vidal" or (m.form == "mixed" and cut == m.center):
            return m.bonds[cut - 1]
    sd = schmidt_decompose(to_dense(m), cut)
    return BondSpectrum(sd.coefficients)


def entanglement_entropy(m: MatrixProductState, cut: int) -> float:
    """Entanglement entropy across bond ``cut``, in nats."""
    return entropy_from_values(bond_spectrum(m, cut).values)


def apply_site_map(m: MatrixProductState, n: int, x: np.ndarray, k: int) -> np.ndarray:
    """Apply site n's k-th slice to a right-bond vector.

    The matrix-vector product (M^(k) x)_{a_left} = sum_{a_right}
    M^(k)_{a_left, a_right} x_{a_right}; composing these over all sites
    evaluates single coefficients.
    """
    if not 1 <= n <= m.num_sites:
        raise IndexOutOfRange(f"site must be in 1..{m.num_sites}, got {n}")
    site = m.sites[n - 1]
    if not 0 <= k < site.phys_dim:
        raise IndexOutOfRange(f"physical index {k} outside 0..{site.phys_dim - 1} at site {n}")
    vec = np.asarray(x, dtype=complex).reshape(-1)
    if vec.size != site.right_dim:
        raise LengthMismatch(f"vector length {vec.size} != right_dim {site.right_dim} at site {n}")
    return site.as_array()[k] @ vec


def coefficient(m: MatrixProductState, indices) -> complex:
    """Evaluate one coefficient c_{k1..kN} by a right-to-left vector sweep
    through the site maps (the full tensor is never materialized)."""
    idx = list(indices)
    if len(idx) != m.num_sites:
        raise IndexOutOfRange(f"expected {m.num_sites} indices, got {len(idx)}")
    for n, (k, site) in enumerate(zip(idx, m.sites), start=1):
        if not 0 <= int(k) < site.phys_dim:
            raise IndexOutOfRange(f"physical index {k} outside 0..{site.phys_dim - 1} at site {n}")
    v = np.ones(1, dtype=complex)
    for n in range(m.num_sites, 0, -1):
        if n < m.num_sites and m.bonds is not None and m.bonds[n - 1] is not None:
            v = m.bonds[n - 1].values * v
        v = apply_site_map(m, n, v, int(idx[n - 1]))
    return complex(v[0])
