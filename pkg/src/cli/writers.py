from __future__ import annotations

import csv
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Sequence

import openpyxl
from openpyxl.styles import Font

from src.logger import get_logger

from .exceptions import UsageError
from .manifest import RunManifest

_logger = get_logger()


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    XLSX = "xlsx"


def _compact(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def write_csv(
    path: Path,
    schema: str,
    columns: Sequence[str],
    rows: List[Dict[str, Any]],
    manifest: RunManifest,
) -> None:
    """Tidy CSV preceded by `# schema:` and `# manifest:` comment lines."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# schema: {schema}\n")
        handle.write(f"# manifest: {_compact(manifest.deterministic_part())}\n")
        writer = csv.DictWriter(handle, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_json(path: Path, payload: Dict[str, Any], manifest: RunManifest) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"manifest": manifest.deterministic_part(), **payload}
    with path.open("w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=False, ensure_ascii=False)
        handle.write("\n")


def write_xlsx(
    path: Path,
    schema: str,
    columns: Sequence[str],
    rows: List[Dict[str, Any]],
    manifest: RunManifest,
) -> None:
    """Workbook with the table on the first sheet and the manifest on the second."""
    path.parent.mkdir(parents=True, exist_ok=True)
    workbook = openpyxl.Workbook()
    sheet = workbook.active
    assert sheet is not None, "New workbook must have an active sheet"
    sheet.title = "data"
    sheet.append(list(columns))
    for cell in sheet[1]:
        cell.font = Font(bold=True)
    for row in rows:
        sheet.append([row.get(column) for column in columns])

    provenance = workbook.create_sheet("manifest")
    provenance.append(["key", "value"])
    for cell in provenance[1]:
        cell.font = Font(bold=True)
    provenance.append(["schema", schema])
    for key, value in manifest.deterministic_part().items():
        provenance.append([key, value if isinstance(value, str) else _compact({key: value})])
    workbook.save(path)


def write_table(
    path: Path,
    fmt: OutputFormat,
    schema: str,
    columns: Sequence[str],
    rows: List[Dict[str, Any]],
    manifest: RunManifest,
) -> Path:
    """Write one table in the requested format and return the path written."""
    if fmt == OutputFormat.CSV:
        write_csv(path, schema, columns, rows, manifest)
    elif fmt == OutputFormat.JSON:
        write_json(path, {"schema": schema, "columns": list(columns), "rows": rows}, manifest)
    elif fmt == OutputFormat.XLSX:
        write_xlsx(path, schema, columns, rows, manifest)
    else:
        raise UsageError(f"Unsupported output format: {fmt}")
    _logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".manifest.json")


def write_sidecar(path: Path, manifest: RunManifest) -> Path:
    """Full manifest, timestamps included, next to an output file."""
    target = sidecar_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as handle:
        json.dump(manifest.model_dump(mode="json"), handle, indent=2)
        handle.write("\n")
    return target
