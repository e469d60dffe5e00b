import logging
from typing import Dict, Iterable, List, Optional

import questionary
import typer
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.style import Style
from rich.table import Table
from rich.text import Text

from .report import render

# Panels and logs go to stderr so that stdout carries only JSON.
console = Console(stderr=True)

QUESTION_STYLE = questionary.Style([
    ('qmark', 'fg:cyan bold'),
    ('question', 'fg:white bold'),
    ('pointer', 'fg:cyan bold'),
    ('highlighted', 'fg:cyan bold'),
    ('selected', 'fg:green bold'),
])


def setup_logging(level: str = "WARNING"):
    """Route the package logger through rich."""
    logger = logging.getLogger("src")
    logger.handlers.clear()
    handler = RichHandler(console=console, show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False


class UI:
    HEADER_STYLE = Style(color="cyan", bold=True)
    SUCCESS_STYLE = Style(color="green", bold=True)
    ERROR_STYLE = Style(color="red", bold=True)
    INFO_STYLE = Style(color="yellow")

    @staticmethod
    def _panel(text: str, style: str, border: str):
        console.print(Panel(
            Text(text, style=style, justify="center"),
            box=box.HEAVY,
            border_style=border,
            padding=(0, 2)
        ))

    @classmethod
    def print_header(cls, text: str):
        cls._panel(text, "cyan bold", "cyan")

    @classmethod
    def print_success(cls, text: str):
        cls._panel(f"✔ {text}", "green bold", "green")

    @classmethod
    def print_error(cls, text: str):
        cls._panel(f"✘ {text}", "red bold", "red")

    @classmethod
    def print_info(cls, text: str):
        cls._panel(text, "yellow bold", "yellow")

    @staticmethod
    def print_report(obj, digits: int = 12):
        """Write the canonical JSON form of a record to stdout."""
        typer.echo(render(obj, digits))

    @staticmethod
    def print_scenarios(rows: Iterable[Dict[str, str]]):
        table = Table(box=box.SIMPLE_HEAVY, header_style="cyan bold")
        table.add_column("name")
        table.add_column("aliases", style="magenta")
        table.add_column("topic")
        table.add_column("description", style="dim")
        for row in rows:
            table.add_row(row["name"], row.get("aliases", ""), row["topic"], row["description"])
        console.print(table)

    @staticmethod
    def select_scenario(names: List[str]) -> Optional[str]:
        """Interactive picker used when `scenario run` gets no name on a terminal."""
        return questionary.select(
            "Choose a scenario:",
            choices=names,
            qmark="∑",
            pointer="➜",
            style=QUESTION_STYLE
        ).ask()
