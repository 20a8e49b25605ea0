"""Exhaustive classification of connected graphs by ideal-theoretic properties.

Stages: generate or ingest one representative per isomorphism class (S1),
keep the indecomposable unmixed graphs (S2), flag accessibility (S3) and
strong unmixedness (S4), and verify that the last two select the same
graphs (S5).  Results persist as JSONL sorted by certificate with chunked
checkpoints, so interrupted runs resume and worker count never changes
the bytes written.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import canon
from .complexes import f_vector, h_vector, initial_complex, multiplicity, s2_report, symbol_name
from .cutsets import accessibility, is_indecomposable, is_strongly_unmixed, unmixedness
from .graphs import Graph, _graph_unchecked, bits, decode_graph6, encode_graph6, is_connected

MAX_GENERATOR_N = 9
CHECKPOINT_CHUNK = 10_000


class TheoremContradictionError(RuntimeError):
    """A record violated a proven implication; carries the offending graph."""

    def __init__(self, message: str, graph6: str):
        super().__init__(f"{message} (graph6: {graph6})")
        self.graph6 = graph6


def default_workers() -> int:
    raw = os.environ.get("BEI_WORKERS", "")
    try:
        w = int(raw)
    except ValueError:
        w = 0
    return w if w > 0 else multiprocessing.cpu_count()


# -- S1: one representative per isomorphism class ---------------------------


def _children_certs(parent_cert: bytes, max_rank: int | None) -> set[bytes]:
    parent = decode_graph6(parent_cert)
    n = parent.n + 1
    new = n - 1
    out = set()
    base = parent.adj
    edge_budget = None
    if max_rank is not None:
        edge_budget = n + max_rank - 1 - parent.edge_count()
        if edge_budget < 1:
            return out
    for nb in range(1, 1 << parent.n):
        if edge_budget is not None and nb.bit_count() > edge_budget:
            continue
        adj = list(base)
        for v in bits(nb):
            adj[v] |= 1 << new
        adj.append(nb)
        out.add(canon.certificate(_graph_unchecked(n, tuple(adj))))
    return out


_level_cache: dict[tuple[int, int | None], tuple[bytes, ...]] = {}


def connected_certificates(
    n: int, max_rank: int | None = None, workers: int = 1
) -> tuple[bytes, ...]:
    """Certificates of all connected graphs on n vertices, sorted.

    Grown one vertex at a time from the (n-1)-level with certificate
    deduplication; ``max_rank`` caps the cycle rank at every level, which
    is sound because deleting a non-cut vertex never increases the rank.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > MAX_GENERATOR_N:
        raise ValueError(
            f"internal generator is limited to {MAX_GENERATOR_N} vertices; "
            "ingest a graph6 file for larger sizes"
        )
    key = (n, max_rank)
    if key in _level_cache:
        return _level_cache[key]
    if n == 1:
        level: tuple[bytes, ...] = (canon.certificate(Graph(1, [0])),)
    else:
        parents = connected_certificates(n - 1, max_rank, workers)
        seen: set[bytes] = set()
        if workers > 1 and len(parents) > 64:
            with multiprocessing.Pool(workers) as pool:
                for chunk in pool.starmap(
                    _children_certs,
                    ((p, max_rank) for p in parents),
                    chunksize=max(1, len(parents) // (workers * 8)),
                ):
                    seen.update(chunk)
        else:
            for p in parents:
                seen.update(_children_certs(p, max_rank))
        level = tuple(sorted(seen))
    _level_cache[key] = level
    return level


def enumerate_connected(n: int, workers: int = 1):
    """Connected graphs on n vertices, one per class, in certificate order."""
    for cert in connected_certificates(n, None, workers):
        yield decode_graph6(cert)


def brute_force_connected_count(n: int) -> int:
    """Oracle: canonicalize every labeled graph on n vertices (n <= 6 scale)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        g = _graph_unchecked(n, tuple(adj))
        if is_connected(g):
            seen.add(canon.certificate(g))
    return len(seen)


def ingest_graph6(path: str | Path) -> list[tuple[bytes, Graph]]:
    """Load a graph6 file as (sort_key, graph) pairs, deduplicated and sorted.

    Certificates are exact up to the canonicalizer's size limit; beyond it
    the raw encoding keys the stream, which is assumed pre-deduplicated.
    """
    out: dict[bytes, Graph] = {}
    for line in Path(path).read_bytes().splitlines():
        if not line.strip():
            continue
        g = decode_graph6(line)
        if g.n <= canon.SIZE_LIMIT:
            key = canon.certificate(g)
            out.setdefault(key, decode_graph6(key))
        else:
            out.setdefault(b"L" + encode_graph6(g), g)
    return sorted(out.items())


# -- classification records ---------------------------------------------------


@dataclass
class PipelineOptions:
    s2: bool = False
    complex_invariants: bool = False
    short_circuit: bool = True

    def fingerprint(self) -> str:
        blob = json.dumps(
            {"s2": self.s2, "complex": self.complex_invariants, "short": self.short_circuit}
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class ClassRecord:
    certificate: str
    graph6: str
    n: int
    edge_count: int
    indecomposable: bool
    unmixed: bool
    accessible: bool | None = None
    strongly_unmixed: bool | None = None
    s2: bool | None = None
    f_vector: tuple[int, ...] | None = None
    h_vector: tuple[int, ...] | None = None
    multiplicity: int | None = None
    witness: dict | None = None

    def validate(self) -> None:
        if self.accessible and not self.unmixed:
            raise TheoremContradictionError("accessible graph must be unmixed", self.graph6)
        if self.strongly_unmixed and self.accessible is False:
            raise TheoremContradictionError(
                "strongly unmixed graph must be accessible", self.graph6
            )
        if self.s2 and self.accessible is False:
            raise TheoremContradictionError("S2 graph must be accessible", self.graph6)

    def to_json(self) -> str:
        d = {
            "certificate": self.certificate,
            "graph6": self.graph6,
            "n": self.n,
            "edge_count": self.edge_count,
            "indecomposable": self.indecomposable,
            "unmixed": self.unmixed,
            "accessible": self.accessible,
            "strongly_unmixed": self.strongly_unmixed,
            "s2": self.s2,
            "f_vector": list(self.f_vector) if self.f_vector is not None else None,
            "h_vector": list(self.h_vector) if self.h_vector is not None else None,
            "multiplicity": self.multiplicity,
            "witness": self.witness,
        }
        return json.dumps(d)

    @staticmethod
    def from_json(line: str) -> "ClassRecord":
        d = json.loads(line)
        for key in ("f_vector", "h_vector"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return ClassRecord(**d)


def _cutset_witness(mask: int) -> dict:
    return {"kind": "cutset", "vertices": sorted(bits(mask))}


def _face_witness(mask: int, n: int) -> dict:
    key = lambda b: (b % n, b // n)
    return {"kind": "face", "symbols": [symbol_name(b, n) for b in sorted(bits(mask), key=key)]}


def classify(g: Graph, opts: PipelineOptions | None = None) -> ClassRecord:
    """Evaluate the pipeline stages on one connected graph.

    With ``short_circuit`` (the default) decomposable or non-unmixed graphs
    stop after stage two and the later flags stay null; the single-graph
    inspection path turns that off to fill every field.
    """
    opts = opts or PipelineOptions()
    if not is_connected(g):
        raise ValueError("classify expects a connected graph")
    cert = canon.certificate(g) if g.n <= canon.SIZE_LIMIT else b"L" + encode_graph6(g)
    rec = ClassRecord(
        certificate=cert.decode("ascii"),
        graph6=encode_graph6(g).decode("ascii"),
        n=g.n,
        edge_count=g.edge_count(),
        indecomposable=is_indecomposable(g),
        unmixed=True,
    )
    un = unmixedness(g)
    rec.unmixed = un.ok
    if not un.ok:
        rec.witness = _cutset_witness(un.witness)
    proceed = (rec.indecomposable and rec.unmixed) or not opts.short_circuit
    if proceed:
        acc = accessibility(g)
        rec.accessible = acc.ok
        if not acc.ok and acc.witness is not None and rec.witness is None:
            rec.witness = _cutset_witness(acc.witness)
        rec.strongly_unmixed = is_strongly_unmixed(g)
        if opts.s2:
            s2 = s2_report(g)
            rec.s2 = s2.ok
            if not s2.ok and s2.witness is not None and rec.witness is None:
                rec.witness = _face_witness(s2.witness, g.n)
        if opts.complex_invariants:
            cx = initial_complex(g)
            f = f_vector(cx)
            rec.f_vector = f
            rec.h_vector = h_vector(f, len(f) - 1)
            rec.multiplicity = multiplicity(cx)
    rec.validate()
    return rec


# -- run orchestration ---------------------------------------------------------


@dataclass
class RunSummary:
    n: int
    counts: dict = field(default_factory=dict)
    equivalence_verified: bool = False
    wall_time: float = 0.0
    worker_count: int = 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "counts": self.counts,
                "equivalence_verified": self.equivalence_verified,
                "wall_time": self.wall_time,
                "worker_count": self.worker_count,
            }
        )


def _classify_chunk(args) -> list[str]:
    certs, opts = args
    out = []
    for cert in certs:
        g = decode_graph6(cert[1:] if cert.startswith(b"L") else cert)
        out.append(classify(g, opts).to_json())
    return out


def summarize(records: list[ClassRecord], with_s2: bool) -> dict:
    counts = {
        "generated": len(records),
        "indecomposable_unmixed": sum(
            1 for r in records if r.indecomposable and r.unmixed
        ),
        "accessible": sum(1 for r in records if r.accessible),
        "strongly_unmixed": sum(1 for r in records if r.strongly_unmixed),
    }
    if with_s2:
        counts["s2"] = sum(1 for r in records if r.s2)
    return counts


def verify_equivalence(records: list[ClassRecord]) -> dict:
    """S5: symmetric difference of the accessible and strongly-unmixed sets.

    Restricted to records where both flags were computed; a nonempty
    difference is reported, not raised, so the harness can self-test.
    """
    acc = {r.certificate for r in records if r.accessible}
    su = {r.certificate for r in records if r.strongly_unmixed}
    acc_not_su = sorted(acc - su)
    su_not_acc = sorted(su - acc)
    report = {
        "accessible_not_strongly_unmixed": acc_not_su,
        "strongly_unmixed_not_accessible": su_not_acc,
        "equal": not acc_not_su and not su_not_acc,
    }
    with_s2 = [r for r in records if r.s2 is not None]
    if with_s2:
        s2set = {r.certificate for r in with_s2 if r.s2}
        accs2 = {r.certificate for r in with_s2 if r.accessible}
        report["s2_not_accessible"] = sorted(s2set - accs2)
        report["accessible_not_s2"] = sorted(accs2 - s2set)
        report["s2_equal"] = not report["s2_not_accessible"] and not report["accessible_not_s2"]
    return report


def _atomic_write(path: Path, data: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(data)
    os.replace(tmp, path)


def run_pipeline(
    n: int,
    opts: PipelineOptions | None = None,
    out_dir: str | Path | None = None,
    workers: int | None = None,
    resume: bool = False,
    input_path: str | Path | None = None,
    plots: bool = True,
) -> tuple[RunSummary, list[ClassRecord]]:
    """Classify every connected graph on n vertices and persist the results.

    The stream is chunked; each finished chunk lands via atomic rename, and
    a resumed run reuses chunks whose manifest entry matches.  Output bytes
    depend only on (n, options, input), never on the worker count.
    """
    opts = opts or PipelineOptions()
    workers = workers if workers and workers > 0 else default_workers()
    t0 = time.time()

    if input_path is not None:
        keyed = ingest_graph6(input_path)
        certs = [k for k, _ in keyed]
        if any(g.n != n for _, g in keyed):
            raise ValueError("input stream contains graphs of a different order")
    else:
        certs = list(connected_certificates(n, None, workers))

    opts_key = opts.fingerprint()
    chunks = [certs[i : i + CHECKPOINT_CHUNK] for i in range(0, len(certs), CHECKPOINT_CHUNK)]
    chunk_lines: list[list[str]] = [[] for _ in chunks]

    ck_dir = manifest_path = None
    manifest = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        ck_dir = out_dir / "checkpoints"
        ck_dir.mkdir(parents=True, exist_ok=True)
        manifest_path = ck_dir / "manifest.json"
        manifest = {"n": n, "opts": opts_key, "chunk_size": CHECKPOINT_CHUNK, "chunks": {}}
        if resume and manifest_path.exists():
            old = json.loads(manifest_path.read_text())
            if old.get("n") == n and old.get("opts") == opts_key:
                manifest = old

    for idx, chunk in enumerate(chunks):
        ck_file = ck_dir / f"chunk_{idx:05d}.jsonl" if ck_dir else None
        meta = manifest["chunks"].get(str(idx)) if manifest else None
        if (
            meta
            and ck_file
            and ck_file.exists()
            and meta.get("count") == len(chunk)
            and meta.get("last_certificate") == chunk[-1].decode("ascii")
        ):
            chunk_lines[idx] = ck_file.read_text().splitlines()
            continue
        if workers > 1 and len(chunk) > 32:
            sub = max(1, len(chunk) // (workers * 4))
            parts = [(chunk[i : i + sub], opts) for i in range(0, len(chunk), sub)]
            with multiprocessing.Pool(workers) as pool:
                lines = [line for part in pool.map(_classify_chunk, parts) for line in part]
        else:
            lines = _classify_chunk((chunk, opts))
        chunk_lines[idx] = lines
        if ck_file:
            _atomic_write(ck_file, "\n".join(lines) + ("\n" if lines else ""))
            manifest["chunks"][str(idx)] = {
                "count": len(chunk),
                "last_certificate": chunk[-1].decode("ascii"),
            }
            _atomic_write(manifest_path, json.dumps(manifest, indent=1))

    records = [ClassRecord.from_json(line) for lines in chunk_lines for line in lines]
    for r in records:
        r.validate()
    report = verify_equivalence(records)
    summary = RunSummary(
        n=n,
        counts=summarize(records, opts.s2),
        equivalence_verified=report["equal"] and report.get("s2_equal", True),
        wall_time=time.time() - t0,
        worker_count=workers,
    )

    if out_dir is not None:
        _atomic_write(
            out_dir / "records.jsonl",
            "\n".join(line for lines in chunk_lines for line in lines)
            + ("\n" if records else ""),
        )
        _atomic_write(out_dir / "summary.json", summary.to_json() + "\n")
        csv_lines = ["stage,count"] + [f"{k},{v}" for k, v in summary.counts.items()]
        _atomic_write(out_dir / "summary.csv", "\n".join(csv_lines) + "\n")
        _atomic_write(out_dir / "verify.json", json.dumps(report, indent=1) + "\n")
        if plots:
            from .report import render_run_summary

            render_run_summary(summary, out_dir / "summary.png")

    if not summary.equivalence_verified:
        offender = (
            report["accessible_not_strongly_unmixed"]
            + report["strongly_unmixed_not_accessible"]
            + report.get("s2_not_accessible", [])
            + report.get("accessible_not_s2", [])
        )[0]
        raise TheoremContradictionError("stage S5 found a property mismatch", offender)
    return summary, records


def load_records(run_dir: str | Path) -> list[ClassRecord]:
    path = Path(run_dir) / "records.jsonl"
    return [ClassRecord.from_json(line) for line in path.read_text().splitlines() if line]
