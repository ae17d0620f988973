"""Console output helpers using Rich."""

from collections.abc import Iterable, Sequence

from rich.console import Console
from rich.table import Table

console = Console()


def display_success(message: str) -> None:
    """Display a success message."""
    console.print(f"✅ {message}", style="green")


def display_error(message: str) -> None:
    """Display an error message."""
    console.print(f"❌ {message}", style="red")


def display_warning(message: str) -> None:
    """Display a warning message."""
    console.print(f"⚠️  {message}", style="yellow")


def display_info(message: str) -> None:
    """Display an info message."""
    console.print(f"ℹ️  {message}", style="blue")


def display_table(
    title: str,
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
    numeric: bool = True,
) -> None:
    """Render rows as a Rich table; every column after the first is right-aligned."""
    table = Table(title=title, title_style="bold")
    for i, column in enumerate(columns):
        justify = "right" if numeric and i > 0 else "left"
        table.add_column(column, justify=justify)
    for row in rows:
        table.add_row(*("" if cell is None else str(cell) for cell in row))
    console.print(table)
