"""Plain-text and key-value rendering shared by the analysis and bench reports."""

from __future__ import annotations


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


def format_kv(metrics: dict) -> str:
    """One ``name=value`` pair per line, in insertion order."""
    return "\n".join(f"{k}={_fmt(v)}" for k, v in metrics.items())


def format_text(title: str, metrics: dict) -> str:
    width = max((len(k) for k in metrics), default=0)
    lines = [title, "-" * len(title)]
    lines += [f"{k.replace('_', ' '):<{width}}  {_fmt(v)}" for k, v in metrics.items()]
    return "\n".join(lines)
