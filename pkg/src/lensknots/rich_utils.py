import shutil
from argparse import SUPPRESS, Action, ArgumentParser
from typing import IO, Any, Dict, Iterator, List, Optional, Sequence

from rich import box
from rich.console import Console, Group
from rich.panel import Panel
from rich.style import Style
from rich.table import Column, Table
from rich.text import Text
from rich.traceback import install

from .utils import LensknotsSettings

__all__ = [
    "LensknotsTheme",
    "RichArgumentParser",
    "TableParser",
    "add_pretty_traceback",
]


class LensknotsTheme:
    """Styles for help panels and result tables. Terminals with a basic
    color system get plain, dim or reversed text instead of colors."""

    column_colors = ("magenta", "yellow", "red", "cyan", "green")

    def __init__(self, console: Optional[Console] = None) -> None:
        console = console or Console()
        colorful = console.color_system not in (None, "standard", "windows")
        terminal = console.is_terminal

        self.title = Style(bold=True) if colorful else Style()
        self.caption = (
            Style(color="grey74", italic=True)
            if colorful
            else Style(dim=terminal)
        )
        self.heading = Style(color="cyan", bold=colorful)
        self.plain = Style(color="default", bold=False, italic=False)
        self.header = Style(bold=True) if colorful else Style(reverse=terminal)

        self.framed = box.ROUNDED
        self.frameless = box.Box("\n".join(" " * 4 for _ in range(8)))

    def column_styles(self, count: int) -> Iterator[Style]:
        for i in range(count):
            yield Style(color=self.column_colors[i % len(self.column_colors)])


def add_pretty_traceback(**install_kwargs: Any) -> None:
    if LensknotsSettings.RICH_TRACEBACK_INSTALLED:
        return

    install(**{"show_locals": LensknotsSettings.RICH_LOCALS, **install_kwargs})
    LensknotsSettings.RICH_TRACEBACK_INSTALLED = True


def _describe_action(action: Action) -> List[str]:
    if action.option_strings:
        name = "/".join(action.option_strings)
    elif action.choices and not isinstance(action.choices, list):
        # nested verbs
        name = "{" + ",".join(action.choices) + "}"
    else:
        name = action.metavar or action.dest

    if action.default in (SUPPRESS, None):
        default = "-"
    else:
        default = repr(action.default)
    return [name, default, action.help or ""]


class RichArgumentParser(ArgumentParser):
    """argparse with usage and help rendered as rich panels. Subparsers
    created from it are RichArgumentParsers too."""

    def __init__(
        self,
        *args,
        console_kwargs: Optional[Dict[str, Any]] = None,
        **kwargs,
    ) -> None:
        super().__init__(*args, **kwargs)
        self.theme = LensknotsTheme()
        self.console_kwargs = console_kwargs or {}

    def format_usage(self):
        usage = super().format_usage().strip()
        if usage.startswith("usage: "):
            usage = usage[len("usage: "):]
        title = Text(" Usage ", style=self.theme.heading)
        return Panel(Text(usage, style=self.theme.plain), title=title)

    def format_help(self):
        parts: List[Any] = []
        if self.description:
            parts.append(
                Panel(
                    Text(self.description, justify="center"),
                    style=self.theme.title,
                    box=box.SIMPLE,
                )
            )
        parts.append(self.format_usage())

        for group in self._action_groups:
            if not group._group_actions:
                continue
            table = TableParser.make_table(
                columns=["Argument", "Default", "Description"],
                values=[_describe_action(a) for a in group._group_actions],
                theme=self.theme,
                v_justify=["left", "center", "left"],
            )
            title = group.title.capitalize() if group.title else None
            parts.append(
                Panel(
                    table,
                    title=Text(title, style=self.theme.heading)
                    if title
                    else None,
                    box=self.theme.framed,
                )
            )

        return Panel(Group(*parts), box=self.theme.frameless)

    def _print_message(
        self, message: Any, file: Optional[IO[str]] = None
    ) -> None:
        if message is None:
            return
        Console(**{**self.console_kwargs, "file": file}).print(message)


class TableParser:
    """Prints rows as a rich table; `--options` and text census output go
    through it."""

    def __init__(
        self,
        theme: Optional[LensknotsTheme] = None,
        console_kwargs: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.theme = theme or LensknotsTheme()
        self.console_kwargs = console_kwargs or {}

    @classmethod
    def make_table(
        cls,
        columns: Sequence[Any],
        values: Sequence[Sequence[Any]],
        title: Optional[str] = None,
        v_justify: Optional[Sequence[str]] = None,
        theme: Optional[LensknotsTheme] = None,
        caption: Optional[str] = None,
        borders: bool = False,
    ) -> Table:
        theme = theme or LensknotsTheme()
        v_justify = v_justify or ["center"] * len(columns)

        # wide enough for the title and caption, but never wider than the
        # terminal (80 columns when not attached to one)
        lines = f"{title or ''}\n{caption or ''}".splitlines()
        longest = max((len(line) for line in lines), default=0)
        min_width = min(longest + 2, shutil.get_terminal_size().columns - 2)

        table = Table(
            *(
                Column(
                    header=f" {name} ",
                    justify=justify,  # type: ignore
                    style=style,
                    header_style=style + theme.header,
                )
                for name, justify, style in zip(
                    columns, v_justify, theme.column_styles(len(columns))
                )
            ),
            padding=(0, 0),
            title=f"\n{title}" if title else None,
            min_width=min_width,
            caption=caption,
            title_style=theme.title,
            caption_style=theme.caption,
            box=theme.framed if borders else theme.frameless,
            expand=True,
            collapse_padding=True,
        )
        for row in values:
            table.add_row(*(str(v) for v in row))
        return table

    def __call__(
        self,
        columns: Sequence[Any],
        values: Sequence[Sequence[Any]],
        title: Optional[str] = None,
        v_justify: Optional[Sequence[str]] = None,
        caption: Optional[str] = None,
        borders: bool = False,
        file: Optional[IO[str]] = None,
    ) -> None:
        table = self.make_table(
            columns=columns,
            values=values,
            title=title,
            v_justify=v_justify,
            theme=self.theme,
            caption=caption,
            borders=borders,
        )
        panel = Panel(table, padding=0, box=self.theme.frameless)
        Console(**{**self.console_kwargs, "file": file}).print(panel)
