"""Prohibited-edge elimination by degree-preserving 2-switches.

Given a biregular 0/1 matrix E and a set M of prohibited positions with
at most p entries in any row or column, rows are processed in ascending
order: each prohibited edge (i, j) still present is traded away by a
2-switch through a replacement column and a donor row, preserving every
row and column sum. Feasibility of the procedure needs 2p <= n_c - d_r
and 2p - 1 <= d_c - theta_c; keeping the Ramanujan property additionally
needs 2p <= mu(d_r, d_c) - sigma_2. All three margins are reported, none
is silently assumed.

Everything here works on the literal row/column orientation of the given
matrix; callers holding a transpose-tagged bigraph should pass its
analysis view when they want the conventional orientation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .graphs import BinaryBigraph, check_biregular
from .spectral import centered_spectral_norm, mu_bound, singular_values, spectral_norm, theta_c


@dataclass(frozen=True)
class ProhibitedSet:
    """Index pairs (row, column), 0-based, that the edge set must avoid."""

    pairs: frozenset

    def __post_init__(self) -> None:
        for pair in self.pairs:
            if (
                not isinstance(pair, tuple)
                or len(pair) != 2
                or not all(isinstance(v, int) and v >= 0 for v in pair)
            ):
                raise ValueError(f"bad prohibited pair {pair!r}; need (row, col) with ints >= 0")

    @classmethod
    def from_pairs(cls, pairs) -> "ProhibitedSet":
        return cls(frozenset((int(i), int(j)) for i, j in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))


def occupancy(M: ProhibitedSet, n_r: int, n_c: int) -> int:
    """The minimal valid p: the largest count of M on any one line."""
    row_counts = np.zeros(n_r, dtype=np.int64)
    col_counts = np.zeros(n_c, dtype=np.int64)
    for i, j in M.pairs:
        if i >= n_r or j >= n_c:
            raise ValueError(f"prohibited pair ({i}, {j}) outside a {n_r} x {n_c} matrix")
        row_counts[i] += 1
        col_counts[j] += 1
    if len(M) == 0:
        return 0
    return int(max(row_counts.max(), col_counts.max()))


@dataclass
class FeasibilityReport:
    """All three margins from the switch lemma and the retention theorem.

    procedure_ok gates the combinatorial rewiring (row and column
    margins non-negative); ramanujan_ok additionally certifies that a
    feasible perturbation keeps the Ramanujan property. Negative margins
    are an outcome, not an exception.
    """

    n_r: int
    n_c: int
    d_r: int
    d_c: int
    p: int
    theta_col: int
    sigma2: float
    mu: float
    row_margin: int
    col_margin: int
    spectral_margin: float
    procedure_ok: bool
    ramanujan_ok: bool

    def to_dict(self) -> dict:
        return {
            "n_r": self.n_r,
            "n_c": self.n_c,
            "d_r": self.d_r,
            "d_c": self.d_c,
            "p": self.p,
            "theta_col": self.theta_col,
            "sigma2": self.sigma2,
            "mu": self.mu,
            "row_margin": self.row_margin,
            "col_margin": self.col_margin,
            "spectral_margin": self.spectral_margin,
            "procedure_ok": self.procedure_ok,
            "ramanujan_ok": self.ramanujan_ok,
        }


def feasibility_margins(
    n_r: int, n_c: int, d_r: int, d_c: int, p: int, sigma2: float, theta_col: int
) -> FeasibilityReport:
    """Evaluate the three inequalities from known quantities.

    Exists separately from feasibility() so instances whose sigma2 and
    theta_c are known in closed form can be assessed without building
    (or eigendecomposing) the matrix.
    """
    mu = mu_bound(d_r, d_c)
    row_margin = n_c - d_r - 2 * p
    col_margin = (d_c - theta_col) - (2 * p - 1)
    spectral_margin = (mu - sigma2) - 2 * p
    return FeasibilityReport(
        n_r=n_r,
        n_c=n_c,
        d_r=d_r,
        d_c=d_c,
        p=p,
        theta_col=theta_col,
        sigma2=float(sigma2),
        mu=mu,
        row_margin=row_margin,
        col_margin=col_margin,
        spectral_margin=float(spectral_margin),
        procedure_ok=row_margin >= 0 and col_margin >= 0,
        ramanujan_ok=spectral_margin >= 0,
    )


def feasibility(
    E: BinaryBigraph,
    M: ProhibitedSet,
    *,
    sigma2: Optional[float] = None,
    theta_col: Optional[int] = None,
    method: str = "auto",
) -> FeasibilityReport:
    """Margins for a concrete matrix; sigma2/theta_col computed on demand."""
    d_r, d_c = check_biregular(E)
    p = occupancy(M, E.n_r, E.n_c)
    if theta_col is None:
        theta_col = theta_c(E)
    if sigma2 is None:
        sv = singular_values(E, method)
        sigma2 = float(sv[1]) if sv.size > 1 else 0.0
    return feasibility_margins(E.n_r, E.n_c, d_r, d_c, p, sigma2, theta_col)


class Switch(NamedTuple):
    """One applied 2-switch: (row, conflict_col) traded for the donor pair."""

    row: int
    conflict_col: int
    donor_row: int
    replacement_col: int


class CandidateExhaustionError(RuntimeError):
    """No legal donor row (or replacement column) remains for a conflict.

    Possible when the feasibility preconditions fail, or via cross-row
    interaction that the row-by-row counting argument does not cover;
    the full selection context rides along for diagnosis.
    """

    def __init__(self, message: str, *, row: int, conflict_col: int, context: dict):
        super().__init__(message)
        self.row = row
        self.conflict_col = conflict_col
        self.context = context


@dataclass
class PerturbResult:
    """The rewired matrix E_p = E - delta_minus + delta_plus and its log."""

    e_p: BinaryBigraph
    delta_plus: np.ndarray
    delta_minus: np.ndarray
    switches: list = field(default_factory=list)
    p: int = 0


def _line_asserts(W, i, ibar, j, jbar, row_target, col_sums):
    assert W[i].sum() == row_target and W[ibar].sum() == row_target, "row sum broken by switch"
    assert W[:, j].sum() == col_sums[j] and W[:, jbar].sum() == col_sums[jbar], (
        "column sum broken by switch"
    )


def perturb(E: BinaryBigraph, M: ProhibitedSet) -> PerturbResult:
    """Eliminate every prohibited edge by sequential 2-switches.

    Rows are processed in ascending order and conflicts are recomputed
    against the current matrix, since earlier switches may have touched
    this row. Resolving conflict (i, j) picks a replacement column jbar
    (current zero in row i, not prohibited there) and a donor row
    (current one in column jbar, current zero in column j, (donor, j)
    not prohibited, donors distinct within the row), then flips the four
    positions. Row and column sums are asserted after every switch.

    Selection also respects per-line delta budgets: a row carrying m
    prohibited positions may donate at most p - m times, and a column
    carrying m prohibited positions may serve as replacement at most
    p - m times. Bare row-by-row processing can pile more than p changes
    onto one line through donor/replacement reuse, which would break the
    norm bounds |delta| <= p that the retention argument rests on; the
    budgets restore those bounds by construction. Among in-budget
    options the least-used line wins, smallest index on ties, keeping
    runs reproducible.

    Raises:
        CandidateExhaustionError: a conflict with no legal replacement
            column and donor row pair; reported with the selection
            context instead of silently degrading.
    """
    base = E.matrix.copy()
    W = E.matrix.copy()
    d_r, _ = check_biregular(E)
    n_r, n_c = W.shape
    p = occupancy(M, n_r, n_c)
    col_sums = W.sum(axis=0)
    switches: list[Switch] = []
    prohibited_rows: dict[int, set] = {}
    m_row = np.zeros(n_r, dtype=np.int64)
    m_col = np.zeros(n_c, dtype=np.int64)
    for i, j in M.pairs:
        prohibited_rows.setdefault(i, set()).add(j)
        m_row[i] += 1
        m_col[j] += 1
    donate_used = np.zeros(n_r, dtype=np.int64)
    repl_used = np.zeros(n_c, dtype=np.int64)
    for i in range(n_r):
        bad_cols = prohibited_rows.get(i)
        if not bad_cols:
            continue
        conflicts = sorted(j for j in bad_cols if W[i, j])
        donors_used: set[int] = set()
        for j_l in conflicts:
            repl_options = [
                j
                for j in range(n_c)
                if W[i, j] == 0 and j not in bad_cols and repl_used[j] < p - m_col[j]
            ]
            repl_options.sort(key=lambda j: (repl_used[j], j))
            chosen = None
            for jbar in repl_options:
                donor_options = [
                    int(r)
                    for r in np.nonzero((W[:, jbar] == 1) & (W[:, j_l] == 0))[0]
                    if int(r) not in donors_used
                    and j_l not in prohibited_rows.get(int(r), ())
                    and donate_used[r] < p - m_row[r]
                ]
                if donor_options:
                    donor_options.sort(key=lambda r: (donate_used[r], r))
                    chosen = (jbar, donor_options[0])
                    break
            if chosen is None:
                raise CandidateExhaustionError(
                    f"row {i}, conflict column {j_l}: no in-budget replacement "
                    f"column and donor row pair",
                    row=i,
                    conflict_col=j_l,
                    context={
                        "replacement_options": repl_options,
                        "donors_used": sorted(donors_used),
                        "p": p,
                    },
                )
            jbar, ibar = chosen
            donors_used.add(ibar)
            donate_used[ibar] += 1
            repl_used[jbar] += 1
            W[i, j_l] = 0
            W[ibar, j_l] = 1
            W[ibar, jbar] = 0
            W[i, jbar] = 1
            _line_asserts(W, i, ibar, j_l, jbar, d_r, col_sums)
            switches.append(Switch(i, j_l, ibar, jbar))
    for i, j in M.pairs:
        assert not W[i, j], f"prohibited edge ({i}, {j}) survived; procedure bug"
    delta_minus = ((base == 1) & (W == 0)).astype(np.uint8)
    delta_plus = ((W == 1) & (base == 0)).astype(np.uint8)
    result = BinaryBigraph(W, analyze_transpose=E.analyze_transpose)
    check_biregular(result)
    return PerturbResult(result, delta_plus, delta_minus, switches, p)


@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str


@dataclass
class PerturbationCertificate:
    """Itemized verification of a PerturbResult against its inputs."""

    checks: list
    p: int
    mu: float
    sigma2_original: float
    centered_norm: float
    retention_applicable: bool

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "p": self.p,
            "mu": self.mu,
            "sigma2_original": self.sigma2_original,
            "centered_norm": self.centered_norm,
            "retention_applicable": self.retention_applicable,
            "passed": self.passed,
        }


def verify_perturbation(
    E: BinaryBigraph, result: PerturbResult, M: ProhibitedSet, method: str = "auto"
) -> PerturbationCertificate:
    """Independent check of the five perturbation contracts.

    (a) support discipline of both deltas, (b) biregularity of the
    output, (c) disjointness from M, (d) spectral norms of the deltas
    within p (and their difference within 2p), (e) Ramanujan retention
    whenever the spectral margin held for the original matrix. Nothing
    here trusts the switch log; everything is recomputed from the
    matrices.
    """
    base = E.matrix.astype(np.int64)
    new = result.e_p.matrix.astype(np.int64)
    dplus = result.delta_plus.astype(np.int64)
    dminus = result.delta_minus.astype(np.int64)
    p = occupancy(M, E.n_r, E.n_c)
    checks: list[CheckItem] = []

    omega = base == 1
    in_m = np.zeros(base.shape, dtype=bool)
    for i, j in M.pairs:
        in_m[i, j] = True
    ok_a = (
        bool((dminus[~omega] == 0).all())
        and bool((dminus[omega & in_m] == 1).all())
        and bool((dplus[omega | in_m] == 0).all())
        and np.array_equal(base - dminus + dplus, new)
    )
    checks.append(
        CheckItem(
            "support",
            ok_a,
            "supp(d-) within original edges covering all conflicts; "
            "supp(d+) avoids original edges and prohibitions; E_p = E - d- + d+",
        )
    )

    try:
        degrees = check_biregular(result.e_p)
        ok_b = degrees == check_biregular(E)
        detail_b = f"degrees {degrees}"
    except Exception as exc:  # degree failure is data, not a crash
        ok_b = False
        detail_b = str(exc)
    checks.append(CheckItem("biregular", ok_b, detail_b))

    ok_c = not bool(new[in_m].any())
    checks.append(CheckItem("disjoint-from-prohibited", ok_c, f"|M| = {len(M)}"))

    slack = 1e-9 * max(1.0, float(p))
    n_plus = spectral_norm(dplus, method)
    n_minus = spectral_norm(dminus, method)
    n_diff = spectral_norm(dplus - dminus, method)
    ok_d = n_plus <= p + slack and n_minus <= p + slack and n_diff <= 2 * p + slack
    checks.append(
        CheckItem(
            "delta-norms",
            ok_d,
            f"|d+| = {n_plus:.6g}, |d-| = {n_minus:.6g}, |d+ - d-| = {n_diff:.6g}, p = {p}",
        )
    )

    d_r, d_c = check_biregular(E)
    mu = mu_bound(d_r, d_c)
    sv = singular_values(E, method)
    sigma2 = float(sv[1]) if sv.size > 1 else 0.0
    applicable = 2 * p <= mu - sigma2
    centered = centered_spectral_norm(result.e_p, method)
    if applicable:
        ok_e = centered <= mu + 1e-9 * max(1.0, mu)
        detail_e = f"centered norm {centered:.6g} vs mu {mu:.6g}"
    else:
        ok_e = True
        detail_e = (
            f"spectral margin not held (2p = {2 * p} > mu - sigma2 = {mu - sigma2:.6g}); "
            f"retention not guaranteed, centered norm {centered:.6g}"
        )
    checks.append(CheckItem("ramanujan-retention", ok_e, detail_e))

    return PerturbationCertificate(checks, p, mu, sigma2, centered, applicable)
