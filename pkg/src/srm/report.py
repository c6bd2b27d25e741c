"""Report documents: building, serializing (json / csv / text) and reloading."""

import csv
import io
import json
import os
import tempfile

from .flinalg import FqMatrix
from .invariance import LinearMap
from .search import SearchReport

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


def document(command: str, params: dict, result: dict, counters=None, seed=None, wall_time_ms=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "result": result,
        "counters": counters or {},
        "seed": seed,
        "wall_time_ms": wall_time_ms,
    }


def report_document(report: SearchReport, command: str, timing: bool = True) -> dict:
    result = {"strategy": report.strategy, "count": len(report.found), "found": [m.rows() for m in report.found]}
    result.update(report.extra)
    return document(
        command,
        {"q": report.q, "n": report.n, "r": report.r},
        result,
        dict(report.counters),
        report.seed,
        report.wall_time_ms if timing else None,
    )


def report_from_document(doc: dict) -> SearchReport:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    p, res = doc["params"], doc["result"]
    q, n = p["q"], p["n"]
    found = [LinearMap(FqMatrix.from_rows(rows, q)) for rows in res["found"]]
    extra = {k: v for k, v in res.items() if k not in ("strategy", "count", "found")}
    return SearchReport(q, n, p["r"], res["strategy"], found, dict(doc["counters"]), doc["seed"],
                        doc["wall_time_ms"], extra)


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def to_csv(doc: dict) -> str:
    """Found matrices one per line, entries row-major; other documents as key,value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    res = doc["result"]
    if "found" in res:
        n = doc["params"]["n"]
        w.writerow([f"a{i + 1}{j + 1}" for i in range(n) for j in range(n)])
        for rows in res["found"]:
            w.writerow([v for row in rows for v in row])
    elif "G" in res:
        for row in res["G"]:
            w.writerow(row)
    else:
        w.writerow(["key", "value"])
        for k, v in res.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def _literal(rows) -> str:
    return ";".join(",".join(str(v) for v in row) for row in rows)


def to_text(doc: dict) -> str:
    p, res = doc["params"], doc["result"]
    head = f"{doc['command']}: " + " ".join(f"{k}={v}" for k, v in p.items())
    lines = [head]
    for k, v in res.items():
        if k == "found":
            lines.append(f"found ({len(v)}):")
            lines.extend(f"  {_literal(rows)}" for rows in v)
        elif k == "basis":
            lines.append("basis:")
            lines.extend(f"  {tuple(b['tuple'])}  {b['poly']}" for b in v)
        elif k in ("G", "domain"):
            lines.append(f"{k}:")
            lines.extend("  " + " ".join(str(x) for x in row) for row in v)
        elif isinstance(v, list) and v and isinstance(v[0], list) and v[0] and isinstance(v[0][0], list):
            lines.append(f"{k} ({len(v)}):")
            lines.extend(f"  {_literal(rows)}" for rows in v)
        else:
            lines.append(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    for k, v in doc["counters"].items():
        lines.append(f"counter {k}: {v}")
    if doc["seed"] is not None:
        lines.append(f"seed: {doc['seed']}")
    if doc["wall_time_ms"] is not None:
        lines.append(f"wall_time_ms: {doc['wall_time_ms']}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "text":
        return to_text(doc)
    raise ValueError(f"unknown format {fmt!r}")


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
