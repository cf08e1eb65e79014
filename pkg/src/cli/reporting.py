from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

from jinja2 import Environment, FileSystemLoader, StrictUndefined

_TEMPLATE_ROOT = Path(__file__).resolve().parent / "templates"

report_environment = Environment(
    loader=FileSystemLoader(str(_TEMPLATE_ROOT)),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    undefined=StrictUndefined,
)


def _number(value: Any, digits: int = 6) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    return f"{value:.{digits}g}"


report_environment.filters["num"] = _number


def render(template_name: str, context: Dict[str, Any]) -> str:
    """Render a terminal table from a template in the templates directory."""
    return report_environment.get_template(template_name).render(**context)


__all__ = ["render", "report_environment"]
