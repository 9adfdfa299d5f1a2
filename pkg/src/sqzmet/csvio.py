"""Deterministic CSV output with an embedded, replayable run manifest.

Every CSV starts with '#'-prefixed manifest echo lines followed by a fixed
header row.  Floats are written with 17 significant digits so files
round-trip exactly and reruns of the same manifest are byte-identical.
A JSON sidecar carries the same manifest for programmatic replay.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

MANIFEST_PREFIX = "# sqzmet-manifest: "


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to regenerate one CSV byte-for-byte."""

    command: str
    version: str
    options: dict
    output: str

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "version": self.version,
             "options": self.options, "output": self.output},
            sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunManifest":
        data = json.loads(text)
        return RunManifest(command=data["command"], version=data["version"],
                           options=data["options"], output=data["output"])

    def sidecar_path(self) -> Path:
        return Path(str(self.output) + ".manifest.json")


def fmt(value) -> str:
    """Full-precision decimal rendering of one CSV cell."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int,)):
        return str(value)
    return format(float(value), ".17g")


def write_csv(manifest: RunManifest, header: list[str], rows) -> Path:
    """Write rows under the manifest echo and header; returns the path."""
    path = Path(manifest.output)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    lines = [MANIFEST_PREFIX + manifest.to_json()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest.sidecar_path().write_text(manifest.to_json() + "\n",
                                       encoding="utf-8")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    """Load a manifest from a sidecar file or from a CSV's echo line."""
    text = Path(path).read_text(encoding="utf-8")
    if text.startswith(MANIFEST_PREFIX):
        text = text.splitlines()[0][len(MANIFEST_PREFIX):]
    return RunManifest.from_json(text)
