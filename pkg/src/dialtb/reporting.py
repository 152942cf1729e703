"""Report emission: TSV or line-delimited JSON with a reproducibility header.

Every report starts with comment lines recording the tool version, the seed,
and a digest of each input manifest, so that identical invocations on
identical inputs produce byte-identical reports.  The timestamp line can be
suppressed for exact reproducibility.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone

from . import __version__
from .manifest import manifest_digest


def header_lines(seed: int | None, manifests: list = (), timestamp: bool = True) -> list[str]:
    lines = [f"# tool = dialtb {__version__}"]
    if seed is not None:
        lines.append(f"# seed = {seed}")
    for path in manifests:
        lines.append(f"# manifest = {path} sha256:{manifest_digest(path)}")
    if timestamp:
        lines.append(f"# generated = {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
    return lines


def load_config(path) -> dict:
    """Plain key=value config file; '#' starts a comment line."""
    out = {}
    from pathlib import Path
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {raw!r}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


class ReportWriter:
    """Writes one tabular report to a file or standard output."""

    def __init__(self, fmt: str = "tsv", out=None, seed: int | None = None,
                 manifests: list = (), timestamp: bool = True):
        if fmt not in ("tsv", "jsonl"):
            raise ValueError(f"unknown format {fmt!r}")
        self.fmt = fmt
        self.out = out
        self.header = header_lines(seed, manifests, timestamp)

    def emit(self, columns: list[str], rows: list) -> str:
        if self.fmt == "tsv":
            body = ["\t".join(columns)]
            body += ["\t".join("" if v is None else str(v) for v in row) for row in rows]
            text = "\n".join(self.header + body) + "\n"
        else:
            meta = {"_header": [h[2:] for h in self.header]}
            lines = [json.dumps(meta, ensure_ascii=False)]
            for row in rows:
                lines.append(json.dumps(dict(zip(columns, row)), ensure_ascii=False))
            text = "\n".join(lines) + "\n"
        if self.out is None:
            sys.stdout.write(text)
        else:
            from pathlib import Path
            Path(self.out).write_text(text, encoding="utf-8")
        return text


def round2(x: float) -> float:
    """Half-even rounding to two decimals for percent displays."""
    return round(x, 2)


def fmt_pct(x: float, digits: int = 2) -> str:
    return f"{round(x, digits):.{digits}f}"
