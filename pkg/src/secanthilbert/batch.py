"""Result envelopes, manifests, the on-disk cache and batch execution."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from . import __version__
from .eulerdata import Positivity, VarietySpec, variety_from_dict
from .exactring import ConsistencyError, InputError, format_rational
from .secantpoly import report
from .tautcoh import cohomology_table

log = logging.getLogger(__name__)

TOOL_VERSION = f"secanthilbert {__version__}"
COMPUTATIONS = ("poly1", "poly2", "table2", "table3", "degree")
DEFAULT_ELLS = (1, 6)


@dataclass(frozen=True)
class ResultEnvelope:
    tool_version: str
    variety: dict
    computation: str
    payload: dict
    positivity: Any

    def to_dict(self) -> dict:
        return {
            "toolVersion": self.tool_version,
            "variety": self.variety,
            "computation": self.computation,
            "payload": self.payload,
            "positivity": self.positivity,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> ResultEnvelope:
        try:
            return cls(
                tool_version=data["toolVersion"],
                variety=data["variety"],
                computation=data["computation"],
                payload=data["payload"],
                positivity=data["positivity"],
            )
        except KeyError as exc:
            raise InputError(f"envelope is missing field {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> ResultEnvelope:
        return cls.from_dict(json.loads(text))


def _combine(ps: Iterable[Positivity]) -> Positivity:
    ps = list(ps)
    bad = [p for p in ps if not p.ok]
    if not bad:
        return Positivity(True)
    return Positivity(False, "; ".join(p.message for p in bad), tuple(t for p in bad for t in p.triggered))


def poly_payload(V: VarietySpec, secant_index: int) -> tuple[dict, Positivity]:
    rep = report(V, secant_index)
    payload = {
        "secant": secant_index,
        "dimension": rep.dimension,
        "expectedDimension": rep.polynomial.expected_dim,
        "degree": format_rational(rep.degree),
        "coefficients": rep.polynomial.coefficient_strings(),
        "nodes": [[x, format_rational(v)] for x, v in rep.node_values],
        "notes": list(rep.notes),
    }
    return payload, rep.positivity


def degree_payload(V: VarietySpec, secants: Iterable[int] = (1, 2)) -> tuple[dict, Positivity]:
    entries, ps = [], []
    for k in secants:
        rep = report(V, k)
        entries.append({"secant": k, "dimension": rep.dimension, "degree": format_rational(rep.degree)})
        ps.append(rep.positivity)
    return {"degrees": entries}, _combine(ps)


def table_payload(V: VarietySpec, k: int, ells: Iterable[int]) -> tuple[dict, Positivity]:
    table = cohomology_table(V, k, ells)
    rows = [[i, ell, int(v)] for i, ell, v in table.records()]
    return {"k": k, "header": ["i", "ell", "dim"], "rows": rows}, table.positivity


def compute(V: VarietySpec, computation: str, ells: tuple[int, int] = DEFAULT_ELLS) -> ResultEnvelope:
    if computation in ("poly1", "poly2"):
        payload, pos = poly_payload(V, int(computation[-1]))
    elif computation in ("table2", "table3"):
        lo, hi = ells
        payload, pos = table_payload(V, int(computation[-1]), range(lo, hi + 1))
    elif computation == "degree":
        payload, pos = degree_payload(V)
    else:
        raise InputError(f"unknown computation {computation!r}; expected one of {', '.join(COMPUTATIONS)}")
    return ResultEnvelope(TOOL_VERSION, V.to_dict(), computation, payload, pos.to_json())


def canonical_key(V: VarietySpec, computation: str, ells: tuple[int, int] = DEFAULT_ELLS) -> str:
    key = {"variety": V.to_dict(), "computation": computation}
    if computation.startswith("table"):
        key["ell"] = list(ells)
    blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def output_name(V: VarietySpec, computation: str, ells: tuple[int, int] = DEFAULT_ELLS) -> str:
    return f"{computation}-{canonical_key(V, computation, ells)}.json"


# --- manifest -----------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    variety: VarietySpec | None
    computations: tuple[str, ...]
    ells: tuple[int, int] = DEFAULT_ELLS
    line: int = 0
    error: str | None = None  # set when the block is well-formed but its values are not


@dataclass
class Manifest:
    entries: list[ManifestEntry] = field(default_factory=list)


def parse_ell_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.strip().partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError as exc:
        raise InputError(f"bad ell range {text!r}; expected A..B") from exc
    if a > b:
        raise InputError(f"empty ell range {text!r}")
    if a < 1:
        raise InputError(f"ell range {text!r} contains nonpositive twists")
    return a, b


_ENTRY_KEYS = {"space", "genus", "degree", "dims", "degrees", "computations", "ell"}


def _finish_entry(fields: dict, line: int) -> ManifestEntry:
    try:
        return _build_entry(fields, line)
    except InputError as exc:
        comps = tuple(c.strip() for c in fields.get("computations", "").split(",") if c.strip())
        return ManifestEntry(None, comps or ("?",), DEFAULT_ELLS, line, str(exc))


def _build_entry(fields: dict, line: int) -> ManifestEntry:
    space = fields.get("space")
    if space == "curve":
        raw = {"space": "curve", "genus": fields.get("genus"), "degree": fields.get("degree")}
    elif space == "pps":
        raw = {
            "space": "pps",
            "dims": [x for x in fields.get("dims", "").split(",") if x.strip()],
            "degrees": [x for x in fields.get("degrees", "").split(",") if x.strip()],
        }
    else:
        raise InputError(f"line {line}: entry needs space = curve|pps")
    V = variety_from_dict(raw)
    comps = tuple(c.strip() for c in fields.get("computations", "").split(",") if c.strip())
    if not comps:
        raise InputError(f"line {line}: entry lists no computations")
    for c in comps:
        if c not in COMPUTATIONS:
            raise InputError(f"line {line}: unknown computation {c!r}")
    ells = parse_ell_range(fields["ell"]) if "ell" in fields else DEFAULT_ELLS
    return ManifestEntry(V, comps, ells, line)


def parse_manifest(text: str) -> Manifest:
    """Parse the ``[entry]`` / ``key = value`` manifest format.

    Blank lines and ``#`` comments are ignored.  Every ``[entry]`` block must
    name a variety and at least one computation.
    """
    manifest = Manifest()
    current: dict | None = None
    start = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[entry]":
            if current is not None:
                manifest.entries.append(_finish_entry(current, start))
            current, start = {}, lineno
            continue
        if current is None:
            raise InputError(f"line {lineno}: expected [entry] before {line!r}")
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _ENTRY_KEYS:
            raise InputError(f"line {lineno}: cannot parse {line!r}")
        if key in current:
            raise InputError(f"line {lineno}: duplicate key {key!r}")
        current[key] = value.strip()
    if current is not None:
        manifest.entries.append(_finish_entry(current, start))
    return manifest


# --- cache --------------------------------------------------------------------

class ResultCache:
    """Envelopes on disk, keyed by tool version and canonical job key."""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    def path_for(self, V: VarietySpec, computation: str, ells: tuple[int, int]) -> Path:
        blob = f"{TOOL_VERSION}|{canonical_key(V, computation, ells)}"
        return self.root / f"{hashlib.sha256(blob.encode()).hexdigest()[:24]}.json"

    def get(self, V: VarietySpec, computation: str, ells: tuple[int, int]) -> str | None:
        path = self.path_for(V, computation, ells)
        try:
            text = path.read_text(encoding="utf-8")
            env = ResultEnvelope.from_json(text)
        except (OSError, ValueError, InputError):
            return None
        if env.tool_version != TOOL_VERSION or env.computation != computation or env.variety != V.to_dict():
            return None
        return text

    def put(self, V: VarietySpec, computation: str, ells: tuple[int, int], text: str) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(V, computation, ells)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)

    def entries(self) -> list[Path]:
        if not self.root.is_dir():
            return []
        return sorted(self.root.glob("*.json"))


# --- batch --------------------------------------------------------------------

@dataclass(frozen=True)
class JobStatus:
    entry_line: int
    computation: str
    filename: str | None
    status: str  # "computed", "cached" or "error: ..."


@dataclass
class BatchResult:
    statuses: list[JobStatus]

    @property
    def failed(self) -> bool:
        return any(s.status.startswith("error") for s in self.statuses)

    @property
    def computed(self) -> int:
        return sum(s.status == "computed" for s in self.statuses)


def run_batch(manifest: Manifest, out_dir: Path | str, cache: ResultCache | None = None, threads: int = 1) -> BatchResult:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [(e, c) for e in manifest.entries for c in e.computations]

    def run(job) -> tuple[JobStatus, str | None]:
        entry, comp = job
        if entry.error is not None:
            return JobStatus(entry.line, comp, None, f"error: {entry.error}"), None
        name = output_name(entry.variety, comp, entry.ells)
        if cache is not None:
            text = cache.get(entry.variety, comp, entry.ells)
            if text is not None:
                return JobStatus(entry.line, comp, name, "cached"), text
        try:
            text = compute(entry.variety, comp, entry.ells).to_json()
        except (InputError, ConsistencyError) as exc:
            log.warning("entry at line %d (%s) failed: %s", entry.line, comp, exc)
            return JobStatus(entry.line, comp, None, f"error: {exc}"), None
        if cache is not None:
            cache.put(entry.variety, comp, entry.ells, text)
        return JobStatus(entry.line, comp, name, "computed"), text

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    for status, text in results:
        if text is not None:
            (out_dir / status.filename).write_text(text, encoding="utf-8")
    return BatchResult([s for s, _ in results])


def recompute_envelope(env: ResultEnvelope) -> ResultEnvelope:
    """Recompute a stored envelope from its own variety/computation fields."""
    V = variety_from_dict(env.variety)
    ells = DEFAULT_ELLS
    if env.computation.startswith("table"):
        col = [r[1] for r in env.payload.get("rows", [])]
        if col:
            ells = (min(col), max(col))
    return compute(V, env.computation, ells)

