"""Seeded experiment runner: one record per (n, p, D, seed) cell, CSV + JSON output."""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from critpoints import __version__
from critpoints.critsys import RNG_ALGORITHM, PolySystem, build_critical_system, gen_random_system
from critpoints.fglm import density, fglm_lex, multiplication_matrices, sample_solutions, verify_rank_deficiency
from critpoints.gf import DEFAULT_MODULUS, is_prime
from critpoints.groebner import DegreeCapExceeded, groebner_basis, is_zero_dimensional
from critpoints.hilbert import deg_formula, dreg_formula
from critpoints.reference import DENSITY_BAND, reference_density

log = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "p", "D", "seed", "dreg_pred", "dreg_obs", "deg_pred", "deg_obs",
               "density_pct", "gb_ms", "fglm_ms", "status"]
TIMING_COLUMNS = ("gb_ms", "fglm_ms")

OK = "ok"
DEGENERATE = "degenerate"
CAP_EXCEEDED = "degree_cap_exceeded"


@dataclass
class ExperimentConfig:
    triples: List[Tuple[int, int, int]] = field(default_factory=list)
    seeds: List[int] = field(default_factory=lambda: [0])
    q: int = DEFAULT_MODULUS
    homogeneous: bool = False
    run_fglm: bool = True
    run_density: bool = True
    degree_cap: Optional[int] = None
    output: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        self.triples = [tuple(int(x) for x in t) for t in self.triples]
        if isinstance(self.seeds, int):
            self.seeds = list(range(self.seeds))
        self.seeds = [int(s) for s in self.seeds]
        for n, p, D in self.triples:
            if not 1 <= p <= n - 1:
                raise ValueError(f"triple ({n},{p},{D}): need 1 <= p <= n-1")
            if D < 2:
                raise ValueError(f"triple ({n},{p},{D}): need D >= 2")
        if self.q == 2 or not is_prime(self.q):
            raise ValueError(f"field modulus {self.q} is not an odd prime")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @classmethod
    def from_dict(cls, data: Dict) -> ExperimentConfig:
        data = dict(data)
        if "field" in data:
            data["q"] = data.pop("field")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path) -> ExperimentConfig:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> Dict:
        d = asdict(self)
        d["triples"] = [list(t) for t in self.triples]
        return d

    def cells(self) -> List[Tuple[int, int, int, int]]:
        return [(n, p, D, s) for (n, p, D) in self.triples for s in self.seeds]


@dataclass
class RunRecord:
    n: int
    p: int
    D: int
    seed: int
    dreg_pred: int
    deg_pred: int
    status: str = OK
    dreg_obs: Optional[int] = None
    deg_obs: Optional[int] = None
    density_pct: Optional[float] = None
    density_all_pct: Optional[float] = None
    shape_position: Optional[bool] = None
    rational_point_count: Optional[int] = None
    rank_deficiency_pass: Optional[bool] = None
    gb_ms: Optional[float] = None
    fglm_ms: Optional[float] = None
    q: int = DEFAULT_MODULUS
    homogeneous: bool = False

    def csv_row(self) -> Dict[str, str]:
        return {c: _fmt(getattr(self, c)) for c in CSV_COLUMNS}

    @classmethod
    def from_csv_row(cls, row: Dict[str, str]) -> RunRecord:
        ints = ("n", "p", "D", "seed", "dreg_pred", "deg_pred", "dreg_obs", "deg_obs")
        floats = ("density_pct", "gb_ms", "fglm_ms")
        kw = {}
        for c in CSV_COLUMNS:
            v = row[c]
            if c in ints:
                kw[c] = int(v) if v != "" else None
            elif c in floats:
                kw[c] = float(v) if v != "" else None
            else:
                kw[c] = v
        return cls(**kw)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000.0, 1)


def run_instance(n: int, p: int, D: int, seed: int = 0, q: int = DEFAULT_MODULUS, homogeneous: bool = False,
                 run_fglm: bool = True, run_density: bool = True, degree_cap: Optional[int] = None,
                 system: Optional[PolySystem] = None) -> RunRecord:
    """Generate (or take) F, compute bases of I(F, 1) and fill a record.

    ``system`` replaces the random draw. The default degree cap is the
    predicted regularity plus 4. Failures are reported as statuses.
    """
    rec = RunRecord(n, p, D, seed, dreg_formula(n, p, D), deg_formula(n, p, D), q=q, homogeneous=homogeneous)
    F = system if system is not None else gen_random_system(n, p, D, seed, homogeneous, q)
    S = build_critical_system(F)
    cap = degree_cap if degree_cap is not None else rec.dreg_pred + 4
    t0 = time.perf_counter()
    try:
        # zero minors add nothing to the ideal
        G = groebner_basis([g for g in S.generators if g], degree_cap=cap)
    except DegreeCapExceeded as exc:
        log.warning("(%d,%d,%d) seed %d: %s", n, p, D, seed, exc)
        rec.status = CAP_EXCEEDED
        rec.gb_ms = _ms(t0)
        return rec
    rec.gb_ms = _ms(t0)
    rec.dreg_obs = G.max_step_degree
    if not is_zero_dimensional(G):
        rec.status = DEGENERATE
        return rec
    rec.deg_obs = len(G.staircase)
    if not (run_fglm or run_density):
        return rec
    t0 = time.perf_counter()
    M = multiplication_matrices(G)
    if run_density:
        dr = density(M)
        rec.density_pct = round(dr.last_density, 2)
        rec.density_all_pct = round(dr.density, 2)
    if run_fglm:
        L = fglm_lex(G, M)
        rec.fglm_ms = _ms(t0)
        sols = sample_solutions(L)
        rec.shape_position = sols.shape_position
        rec.rational_point_count = len(sols)
        if sols.points:
            vanish = all(f.evaluate(pt) == 0 for pt in sols for f in S)
            rec.rank_deficiency_pass = vanish and all(verify_rank_deficiency(F, sols.points))
    return rec


def _run_cell(args) -> RunRecord:
    (n, p, D, seed), cfg = args
    return run_instance(n, p, D, seed, cfg["q"], cfg["homogeneous"], cfg["run_fglm"],
                        cfg["run_density"], cfg["degree_cap"])


def run_suite(config: ExperimentConfig, jobs: Optional[int] = None) -> List[RunRecord]:
    """Run every cell in config order; write CSV and a JSON sidecar if ``config.output`` is set."""
    jobs = jobs or config.jobs
    cfg = config.to_dict()
    work = [(cell, cfg) for cell in config.cells()]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_cell, work))
    else:
        records = [_run_cell(w) for w in work]
    if config.output:
        write_csv(records, config.output)
        write_sidecar(records, config, Path(config.output).with_suffix(".json"))
    return records


def records_to_csv(records: Sequence[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def write_csv(records: Sequence[RunRecord], path) -> None:
    Path(path).write_text(records_to_csv(records))


def read_csv(path) -> List[RunRecord]:
    with open(path, newline="") as fh:
        return [RunRecord.from_csv_row(row) for row in csv.DictReader(fh)]


def write_sidecar(records: Sequence[RunRecord], config: ExperimentConfig, path) -> None:
    payload = {
        "config": config.to_dict(),
        "version": __version__,
        "rng": RNG_ALGORITHM,
        "records": [asdict(r) for r in records],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


@dataclass
class RecordCheck:
    record: RunRecord
    passed: Optional[bool]  # None for excluded (degenerate) records
    dreg_equal: Optional[bool]
    density_ok: Optional[bool]
    messages: List[str] = field(default_factory=list)


@dataclass
class VerifyReport:
    checks: List[RecordCheck]

    @property
    def hard_failures(self) -> int:
        return sum(1 for c in self.checks if c.passed is False)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def degenerate(self) -> int:
        return sum(1 for c in self.checks if c.passed is None)

    @property
    def soft_warnings(self) -> int:
        return sum(1 for c in self.checks if c.dreg_equal is False or c.density_ok is False)

    @property
    def exit_code(self) -> int:
        return 1 if self.hard_failures else 0

    def lines(self) -> List[str]:
        out = []
        for c in self.checks:
            r = c.record
            tag = "SKIP" if c.passed is None else ("PASS" if c.passed else "FAIL")
            msg = "; ".join(c.messages)
            out.append(f"{tag} n={r.n} p={r.p} D={r.D} seed={r.seed} status={r.status}" + (f" ({msg})" if msg else ""))
        out.append(f"passed={self.passed} failed={self.hard_failures} degenerate={self.degenerate} "
                   f"warnings={self.soft_warnings}")
        return out


def verify_report(records: Sequence[RunRecord]) -> VerifyReport:
    """Hard: DEG equals the formula and the step degree stays within the bound.

    Soft (reported only): step degree equal to the bound and, when a
    published density exists, density within the band.
    """
    checks = []
    for r in records:
        if r.status == DEGENERATE:
            checks.append(RecordCheck(r, None, None, None, ["degenerate draw excluded"]))
            continue
        msgs = []
        ok = True
        if r.status == CAP_EXCEEDED:
            ok = False
            msgs.append("step degree exceeded the cap")
        if r.deg_obs != r.deg_pred:
            ok = False
            msgs.append(f"DEG {r.deg_obs} != {r.deg_pred}")
        if r.dreg_obs is None or r.dreg_obs > r.dreg_pred:
            ok = False
            msgs.append(f"step degree {r.dreg_obs} above bound {r.dreg_pred}")
        equal = r.dreg_obs == r.dreg_pred
        if not equal and ok:
            msgs.append(f"warning: step degree {r.dreg_obs} below bound {r.dreg_pred}")
        dens_ok = None
        ref = reference_density(r.n, r.p, r.D)
        if ref is not None and r.density_pct is not None:
            dens_ok = abs(r.density_pct - ref) <= DENSITY_BAND
            if not dens_ok:
                msgs.append(f"warning: density {r.density_pct:.2f} outside {ref:.2f} +- {DENSITY_BAND}")
        checks.append(RecordCheck(r, ok, equal, dens_ok, msgs))
    return VerifyReport(checks)
