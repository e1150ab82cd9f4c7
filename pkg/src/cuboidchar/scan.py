"""Resumable deterministic scan over coprime lattice points.

Work unit = one q value (all admissible p for that q, ascending); units
are dispatched to a worker pool but results are emitted strictly in q
order, so the record stream is byte-identical for any worker count.  The
checkpoint stores the config digest, the last completed q and the output
byte offset; resume truncates the output to that offset and continues,
reproducing an uninterrupted run exactly.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from dataclasses import dataclass, field, replace
from multiprocessing import get_context
from typing import Iterator

from .cuboid import Triple, try_build_cuboid
from .region import RegionClass, classify, covering_theorems, subregion_p_range
from .roots import DEFAULT_BITS, char_integer_roots

__all__ = [
    "Checkpoint",
    "CheckpointError",
    "REGION_FILTERS",
    "ScanConfig",
    "ScanRecord",
    "load_checkpoint",
    "run_scan",
    "scan_records",
]

CHECKPOINT_VERSION = 1
REGION_FILTERS = ("all", "linear", "subregion", "remaining")


class CheckpointError(RuntimeError):
    """Checkpoint missing, corrupted, or from a different configuration."""


@dataclass(frozen=True)
class ScanConfig:
    q_min: int = 1
    q_max: int = 100
    region: str = "linear"
    jobs: int = 1
    seed: int = 0
    bits: int = DEFAULT_BITS
    out_path: str = "scan.jsonl"
    checkpoint_path: str = "scan.checkpoint.json"

    def __post_init__(self):
        if self.q_min > self.q_max or self.q_min < 1:
            raise ValueError("need 1 <= q_min <= q_max")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.region not in REGION_FILTERS:
            raise ValueError(f"region must be one of {REGION_FILTERS}")

    def digest(self) -> str:
        """Hash of the record-stream-affecting fields only; jobs and paths
        are free to change across a resume."""
        payload = {"version": CHECKPOINT_VERSION, "q_min": self.q_min,
                   "q_max": self.q_max, "region": self.region,
                   "seed": self.seed, "bits": self.bits}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


@dataclass(frozen=True)
class ScanRecord:
    """One (p, q) cell's verdict.

    ``cuboid_hit`` is True only when an integer root passed the side
    conditions and the assembled integers satisfied all four cuboid
    equations.  ``elapsed_ns`` is diagnostic and deliberately excluded
    from the serialized stream to keep runs byte-reproducible.
    """

    p: int
    q: int
    region: str
    integer_roots: tuple[int, ...]
    cuboid_hit: bool
    theorems_cover: tuple[str, ...]
    elapsed_ns: int = 0

    def json_line(self) -> str:
        return json.dumps({
            "p": self.p,
            "q": self.q,
            "region": self.region,
            "integer_roots": list(self.integer_roots),
            "cuboid_hit": self.cuboid_hit,
            "theorems_cover": list(self.theorems_cover),
        }, separators=(",", ":")) + "\n"


def _p_values(q: int, region: str) -> Iterator[int]:
    if region == "all":
        span = range(1, 59 * q + 1)
    elif region == "subregion":
        span = subregion_p_range(q)
    else:
        span = range(q // 59 + 1, 59 * q)
    for p in span:
        if p == q or math.gcd(p, q) != 1:
            continue
        cls = classify(p, q)
        if region == "linear" and cls is RegionClass.OUTSIDE_LINEAR:
            continue
        if region == "subregion" and cls is not RegionClass.EXCLUDED_SUBREGION:
            continue
        if region == "remaining" and cls is not RegionClass.REMAINING_LINEAR:
            continue
        yield p


def scan_cell(p: int, q: int) -> ScanRecord:
    """Exact integer-root test plus the cuboid pipeline on any hits."""
    t0 = time.perf_counter_ns()
    roots = char_integer_roots(p, q)
    hit = False
    for t in roots:
        if t <= 0:
            continue
        _, cub, _ = try_build_cuboid(Triple(p, q, t))
        if cub is not None:
            hit = True
    return ScanRecord(p, q, classify(p, q).value, tuple(roots), hit,
                      tuple(covering_theorems(p, q)),
                      time.perf_counter_ns() - t0)


def _scan_unit(args: tuple[int, str]) -> tuple[int, list[ScanRecord]]:
    q, region = args
    return q, [scan_cell(p, q) for p in _p_values(q, region)]


def _batches(cfg: ScanConfig, start_q: int) -> Iterator[tuple[int, list[ScanRecord]]]:
    tasks = [(q, cfg.region) for q in range(start_q, cfg.q_max + 1)]
    if cfg.jobs == 1 or len(tasks) <= 1:
        for t in tasks:
            yield _scan_unit(t)
        return
    chunk = max(1, min(8, len(tasks) // (cfg.jobs * 4) or 1))
    with get_context("fork").Pool(cfg.jobs) as pool:
        yield from pool.imap(_scan_unit, tasks, chunksize=chunk)


def scan_records(cfg: ScanConfig, start_q: int | None = None) -> Iterator[ScanRecord]:
    """Stream records in deterministic (q, p) order; no file I/O."""
    for _, records in _batches(cfg, start_q if start_q is not None else cfg.q_min):
        yield from records


@dataclass(frozen=True)
class Checkpoint:
    version: int
    config_digest: str
    completed_q: int
    out_bytes: int
    config: dict

    def save(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as f:
            json.dump(self.__dict__, f, sort_keys=True)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)


def load_checkpoint(path: str) -> Checkpoint:
    try:
        with open(path) as f:
            raw = json.load(f)
        cp = Checkpoint(**raw)
    except (OSError, ValueError, TypeError) as e:
        raise CheckpointError(f"cannot read checkpoint {path}: {e}") from e
    if cp.version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {cp.version}")
    return cp


def run_scan(cfg: ScanConfig, resume: bool = False,
             stop_after_q: int | None = None) -> int:
    """Execute the scan with checkpointed output.

    Returns 2 when any cuboid hit was recorded (loud on purpose), else 0.
    ``stop_after_q`` simulates interruption for resume testing.
    """
    digest = cfg.digest()
    start_q = cfg.q_min
    out_bytes = 0
    if resume:
        cp = load_checkpoint(cfg.checkpoint_path)
        if cp.config_digest != digest:
            raise CheckpointError("config digest mismatch; refusing to resume")
        if cp.completed_q >= cfg.q_max:
            return 0  # nothing left; no-op
        start_q = cp.completed_q + 1
        out_bytes = cp.out_bytes
    elif os.path.exists(cfg.checkpoint_path):
        raise CheckpointError(
            f"checkpoint {cfg.checkpoint_path} exists; resume or remove it")
    mode = "r+b" if resume and os.path.exists(cfg.out_path) else "wb"
    hit_found = False
    with open(cfg.out_path, mode) as out:
        out.truncate(out_bytes)
        out.seek(out_bytes)
        for q, records in _batches(cfg, start_q):
            out.write("".join(r.json_line() for r in records).encode())
            out.flush()
            os.fsync(out.fileno())
            hit_found = hit_found or any(r.cuboid_hit for r in records)
            Checkpoint(CHECKPOINT_VERSION, digest, q, out.tell(),
                       cfg.__dict__.copy()).save(cfg.checkpoint_path)
            if stop_after_q is not None and q >= stop_after_q:
                break
    return 2 if hit_found else 0
