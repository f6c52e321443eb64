"""Family presets, end-to-end runs, certificates and their verification."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .bundles import BundleSpec, spec_validate
from .codes import torsion_lower_bound
from .defect import clemens_N, defect_hilbert
from .determinantal import (
    SymmetricSection,
    branch_sextic,
    corank2_ideal,
    is_probably_irreducible,
    jacobian_ideal,
    nodality_check,
    sample_phi,
    sing_equals_w,
)
from .errors import DegenerateError, DimensionError, ResourceError, SexticaError
from .ideals import GradedIdeal, ideal_degree
from .poly import DEFAULT_CHAR, HomogeneousPoly, MULTI_PRIMES, check_char

log = logging.getLogger(__name__)

MAX_ATTEMPTS = 16
SCHEMA_VERSION = 1
DEFECT_N = clemens_N(6)


@dataclass(frozen=True)
class FamilyPreset:
    name: str
    spec: BundleSpec
    expected_nodes: int
    expected_defect: int  # exact value, or a lower bound when defect_exact is False
    defect_exact: bool = True

    @property
    def delta(self) -> int:
        return self.spec.delta

    def defect_ok(self, d: int) -> bool:
        return d == self.expected_defect if self.defect_exact else d >= self.expected_defect


PRESETS: dict[str, FamilyPreset] = {
    "Z31": FamilyPreset("Z31", BundleSpec.make(1, (), {-3: 3, -2: 1}), 31, 0),
    "Z32": FamilyPreset("Z32", BundleSpec.make(0, (), {-2: 3}), 32, 0),
    "Z35": FamilyPreset("Z35", BundleSpec.make(1, (), {-3: 6}), 35, 0),
    "Z40": FamilyPreset("Z40", BundleSpec.make(0, [(-1, 1)], {-2: 1}), 40, 0),
    "A24": FamilyPreset("A24", BundleSpec.make(0, (), {-1: 1, -2: 1}), 24, 1, defect_exact=False),
}


def get_preset(name: str) -> FamilyPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise SexticaError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


@dataclass
class Sample:
    """Everything a certificate is recomputed from."""

    preset: str
    seed: int
    attempt: int
    section: SymmetricSection
    B: HomogeneousPoly
    w_ideal: GradedIdeal
    sing_ideal: GradedIdeal

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "preset": self.preset,
            "seed": self.seed,
            "attempt": self.attempt,
            "section": self.section.to_json(),
            "B": self.B.to_json(),
            "w_ideal": self.w_ideal.to_json(),
            "sing_ideal": self.sing_ideal.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "Sample":
        return cls(
            obj["preset"],
            int(obj["seed"]),
            int(obj["attempt"]),
            SymmetricSection.from_json(obj["section"]),
            HomogeneousPoly.from_json(obj["B"]),
            GradedIdeal.from_json(obj["w_ideal"]),
            GradedIdeal.from_json(obj["sing_ideal"]),
        )


@dataclass
class Certificate:
    preset: str
    seed: int
    characteristic: int
    node_count: int | None
    sing_equals_w: bool | None
    nodal: bool | None
    d_w: int | None
    d_sing: int | None
    code_dim_lower: int
    t2_lower: int
    verdict: str  # obstructed | inconclusive | degenerate
    provenance: dict = field(default_factory=dict)
    sample: Sample | None = field(default=None, repr=False, compare=False)

    QUANTITIES = ("node_count", "sing_equals_w", "nodal", "d_w", "d_sing", "code_dim_lower", "t2_lower", "verdict")

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("sample")
        d["schema"] = SCHEMA_VERSION
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        obj = dict(obj)
        obj.pop("schema", None)
        return cls(**obj)

    def key_values(self) -> tuple:
        return self.node_count, self.d_w, self.d_sing

    def agreement_key(self) -> tuple:
        return self.key_values() + (self.sing_equals_w, self.nodal, self.verdict)


def _verdict(nodal: bool, equal: bool, t2: int) -> str:
    return "obstructed" if nodal and equal and t2 >= 1 else "inconclusive"


def analyse(preset: str, seed: int, attempt: int, section: SymmetricSection) -> tuple[Sample, dict]:
    """Extract B, w and Sing(B) from a section; raises DegenerateError on bad samples."""
    B = branch_sextic(section, seed)
    if B.degree != 6:
        raise DegenerateError(f"branch surface has degree {B.degree}")
    if not is_probably_irreducible(B, seed):
        raise DegenerateError("branch sextic is reducible over the base field")
    try:
        Iw = corank2_ideal(section, seed)
        J = jacobian_ideal(B, seed)
        nod = nodality_check(B, J, seed)
    except DimensionError as e:
        raise DegenerateError(str(e)) from e
    if not nod.nodal:
        raise DegenerateError("branch sextic is not nodal")
    sample = Sample(preset, seed, attempt, section, B, Iw, J)
    return sample, quantities(sample)


def quantities(sample: Sample) -> dict:
    Iw, J = sample.w_ideal, sample.sing_ideal
    nod = nodality_check(sample.B, J, sample.seed)
    node_count = ideal_degree(Iw)
    equal = sing_equals_w(J, Iw)
    d_w = defect_hilbert(Iw, DEFECT_N).defect
    d_sing = defect_hilbert(J, DEFECT_N).defect
    code_lower = 1 if node_count > 0 else 0
    t2 = torsion_lower_bound(code_lower, d_sing)
    return {
        "node_count": node_count,
        "sing_equals_w": equal,
        "nodal": nod.nodal,
        "d_w": d_w,
        "d_sing": d_sing,
        "code_dim_lower": code_lower,
        "t2_lower": t2,
        "verdict": _verdict(nod.nodal, equal, t2),
    }


def run_family(preset: str | FamilyPreset, seed: int, char: int = DEFAULT_CHAR,
               max_attempts: int = MAX_ATTEMPTS) -> Certificate:
    fp = preset if isinstance(preset, FamilyPreset) else get_preset(preset)
    p = check_char(char)
    v = spec_validate(fp.spec)
    if not v.accepted:
        raise SexticaError(f"preset spec rejected: {v.reason}")
    attempts = []
    for attempt in range(max_attempts):
        section = sample_phi(fp.spec, seed, p, attempt)
        try:
            sample, q = analyse(fp.name, seed, attempt, section)
        except DegenerateError as e:
            log.info("%s seed %d attempt %d degenerate: %s", fp.name, seed, attempt, e)
            attempts.append({"attempt": attempt, "status": "degenerate", "reason": str(e)})
            continue
        except ResourceError as e:
            attempts.append({"attempt": attempt, "status": "resource", "reason": str(e)})
            continue
        attempts.append({"attempt": attempt, "status": "ok"})
        return Certificate(fp.name, seed, p, **q, provenance=_provenance(fp, seed, p, attempts), sample=sample)
    return Certificate(fp.name, seed, p, None, None, None, None, None, 0, 0, "degenerate",
                       provenance=_provenance(fp, seed, p, attempts))


def _provenance(fp: FamilyPreset, seed: int, p: int, attempts: list) -> dict:
    return {
        "spec": fp.spec.to_json(),
        "seed": seed,
        "primes": [p],
        "retries": len(attempts) - 1 if attempts and attempts[-1]["status"] == "ok" else len(attempts),
        "attempts": attempts,
        "defect_N": DEFECT_N,
        "version": __version__,
    }


# ----------------------------------------------------------------- multi-prime

@dataclass
class PrimeAgreement:
    preset: str
    seed: int
    primes: list[int]
    certificates: list[Certificate]
    agree: bool

    def to_json(self) -> dict:
        return {
            "preset": self.preset,
            "seed": self.seed,
            "primes": self.primes,
            "agree": self.agree,
            "values": {
                str(c.characteristic): dict(zip(("node_count", "d_w", "d_sing", "sing_equals_w", "nodal", "verdict"),
                                                c.agreement_key()))
                for c in self.certificates
            },
        }


def multi_prime(preset: str, seed: int, primes: Sequence[int] = MULTI_PRIMES) -> PrimeAgreement:
    primes = [check_char(q) for q in primes]
    if len(set(primes)) < 2:
        raise SexticaError("multi-prime comparison needs at least two distinct odd primes")
    certs = [run_family(preset, seed, q) for q in primes]
    vals = {c.agreement_key() for c in certs}
    agree = len(vals) == 1 and all(c.verdict != "degenerate" for c in certs)
    return PrimeAgreement(preset, seed, primes, certs, agree)


# ---------------------------------------------------------------- verification

@dataclass
class VerifyResult:
    status: str  # verified | mismatch | different-prime
    ok: bool
    mismatches: dict[str, Any] = field(default_factory=dict)
    recomputed: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def verify_certificate(cert: Certificate, sample: Sample | None, char: int | None = None) -> VerifyResult:
    """Recompute every certified quantity from the stored section.

    With ``char`` different from the certificate's prime the family is rerun
    there and the result says "different-prime"; ``ok`` then reports
    whether node count and defects agree.
    """
    if char is not None and check_char(char) != cert.characteristic:
        other = run_family(cert.preset, cert.seed, char)
        rec = {k: getattr(other, k) for k in Certificate.QUANTITIES}
        mism = {k: (getattr(cert, k), rec[k]) for k in ("node_count", "d_w", "d_sing") if getattr(cert, k) != rec[k]}
        return VerifyResult("different-prime", not mism, mism, rec)
    if cert.verdict == "degenerate":
        rerun = run_family(cert.preset, cert.seed, cert.characteristic)
        same = rerun.verdict == "degenerate"
        return VerifyResult("verified" if same else "mismatch", same, {} if same else {"verdict": ("degenerate", rerun.verdict)})
    if sample is None:
        raise SexticaError("stored sample is required to verify a certificate")
    if sample.section.p != cert.characteristic or sample.seed != cert.seed or sample.preset != cert.preset:
        return VerifyResult("mismatch", False, {"sample": "sample does not belong to this certificate"})
    fresh = Sample(sample.preset, sample.seed, sample.attempt, sample.section,
                   branch_sextic(sample.section, sample.seed), corank2_ideal(sample.section, sample.seed), None)
    fresh.sing_ideal = jacobian_ideal(fresh.B, sample.seed)
    rec = quantities(fresh)
    mism = {k: (getattr(cert, k), rec[k]) for k in Certificate.QUANTITIES if getattr(cert, k) != rec[k]}
    if fresh.B != sample.B:
        mism["B"] = "stored branch sextic differs from the recomputed one"
    return VerifyResult("verified" if not mism else "mismatch", not mism, mism, rec)


# -------------------------------------------------------------------- storage

def save_run(cert: Certificate, out_dir: str | Path) -> tuple[Path, Path | None]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{cert.preset}-{cert.seed}-{cert.characteristic}"
    cpath = out / f"{stem}.certificate.json"
    cpath.write_text(cert.dumps())
    spath = None
    if cert.sample is not None:
        spath = out / f"{stem}.sample.json"
        spath.write_text(json.dumps(cert.sample.to_json(), sort_keys=True) + "\n")
    return cpath, spath


def load_certificate(path: str | Path) -> Certificate:
    return Certificate.from_json(json.loads(Path(path).read_text()))


def load_sample(path: str | Path) -> Sample:
    return Sample.from_json(json.loads(Path(path).read_text()))


# -------------------------------------------------------------------- reports

def report_json(certs: Sequence[Certificate]) -> str:
    return json.dumps([c.to_json() for c in certs], sort_keys=True, indent=2) + "\n"


def report_markdown(certs: Sequence[Certificate]) -> str:
    head = "| family | δ | E | expected nodes | nodes | d(w) | d(Sing B) | Sing B = w | nodal | T₂ ≥ | verdict | seed | p |"
    rows = [head, "|" + "---|" * 13]
    for c in certs:
        fp = PRESETS.get(c.preset)
        rows.append("| " + " | ".join(str(x) for x in (
            c.preset,
            fp.delta if fp else "",
            fp.spec.label() if fp else "",
            fp.expected_nodes if fp else "",
            _cell(c.node_count), _cell(c.d_w), _cell(c.d_sing),
            _cell(c.sing_equals_w), _cell(c.nodal), c.t2_lower, c.verdict, c.seed, c.characteristic,
        )) + " |")
    return "\n".join(rows) + "\n"


def _cell(x) -> str:
    if x is None:
        return "–"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)
