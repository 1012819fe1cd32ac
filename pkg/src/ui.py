from __future__ import annotations

import os
import sys

from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import ANSI

HEADER = '\033[95m'
BLUE = '\033[94m'
CYAN = '\033[96m'
MAGENTA = '\033[95m'
GREEN = '\033[92m'
RED = '\033[31m'
WARNING = '\033[93m'
ENDC = '\033[0m'
BOLD = '\033[1m'
UNDERLINE = '\033[4m'
FAINT = '\033[2m'

BOX_ARROW_FILLED = '►'
BOX_TRIANGLE_MINI = '▸'

# get terminal size
columns: int = 120
rows: int = 30


def get_terminal_size():
    global columns, rows
    try:
        columns, rows = os.get_terminal_size(0)
    except OSError:
        columns, rows = 120, 30


def use_color(stream=None) -> bool:
    "Colour only when writing to a terminal."
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()


# print colored text using ANSI escape sequences
def print_color(c, str, newline=False):
    print_ansi(fmt_color(c, str, newline=newline), end="")


def fmt_color(c, str, newline=False):
    return c + str + ENDC + ("\n" if newline else "")


def print_ansi(text: str, end: str = "\n"):
    "Write text with ANSI escapes through prompt_toolkit, which also handles Windows consoles."
    print_formatted_text(ANSI(text), end=end)


# print a simple divider
def div(length=None) -> str:
    return "-" * (length if length is not None else columns)


def print_div(c=None, length=None, newline=True):
    text = div(length)
    if c is None:
        print_ansi(text, end=("\n" if newline else ""))
    else:
        print_color(c, text, newline)


# print a divider with a header
def header(str, width=None) -> str:
    width = width if width is not None else columns
    inlay = "[ " + str + " ]"
    length = (width - len(inlay)) // 2
    return div(length) + inlay + div(length + (width - len(inlay)) % 2)


def print_header(str, c=ENDC):
    print_color(c, header(str), True)
