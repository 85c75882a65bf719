"""
Console and plain-text rendering of records and tables.
"""

from typing import Any, Dict, List, Sequence

import click
from rich import print
from rich.table import Table


def format_value(value: Any) -> str:
    """Exact, locale-free text for a record or table cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    if value is None:
        return "none"
    return str(value)


def format_record(record: Dict[str, Any]) -> str:
    """Flat `key = value` lines."""
    return "".join(f"{key} = {format_value(value)}\n" for key, value in record.items())


def format_columns(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Whitespace-separated columns under a one-line header."""
    lines = [" ".join(header)]
    lines.extend(" ".join(format_value(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _short(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return format_value(value)


def display_record(title: str, record: Dict[str, Any], output_format: str = "table") -> None:
    """Show a record as a two-column table or as plain lines."""
    if output_format == "record":
        click.echo(format_record(record), nl=False)
        return
    table = Table(title=title)
    table.add_column("Key", style="cyan")
    table.add_column("Value", style="yellow")
    for key, value in record.items():
        table.add_row(str(key), _short(value))
    print(table)


def display_columns(
    title: str,
    header: Sequence[str],
    rows: List[Sequence[Any]],
    output_format: str = "table",
) -> None:
    """Show rows under a header as a rich table or as plain columns."""
    if output_format == "record":
        click.echo(format_columns(header, rows), nl=False)
        return
    table = Table(title=title)
    for name in header:
        table.add_column(name, style="cyan" if name == header[0] else "yellow")
    for row in rows:
        table.add_row(*(_short(cell) for cell in row))
    print(table)
