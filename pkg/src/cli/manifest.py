from __future__ import annotations

from datetime import datetime, timezone
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

TOOL_NAME = "tournament-extremes"
TOOL_VERSION = "0.1.0"


class RunManifest(BaseModel):
    """Provenance of one CLI run.

    Only `deterministic_part` is embedded in outputs; timestamps and wall time
    live in the sidecar file so reruns stay byte-identical.
    """

    subcommand: str
    config: Dict[str, Any] = Field(default_factory=dict)
    runtime: Dict[str, Any] = Field(
        default_factory=dict, description="Settings that cannot change results, such as workers"
    )
    tool: str = TOOL_NAME
    tool_version: str = TOOL_VERSION
    started_at: Optional[str] = None
    finished_at: Optional[str] = None
    wall_time: Optional[float] = None

    @classmethod
    def start(
        cls, subcommand: str, config: Dict[str, Any], runtime: Optional[Dict[str, Any]] = None
    ) -> "RunManifest":
        return cls(
            subcommand=subcommand, config=config, runtime=runtime or {}, started_at=_now()
        )

    def finish(self, wall_time: float) -> "RunManifest":
        return self.model_copy(update={"finished_at": _now(), "wall_time": wall_time})

    def deterministic_part(self) -> Dict[str, Any]:
        return self.model_dump(
            mode="json", exclude={"runtime", "started_at", "finished_at", "wall_time"}
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")
