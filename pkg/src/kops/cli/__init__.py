"""Command-line interface: expression parsing, evaluation and subcommands."""

from .evaluate import Context, evaluate, evaluate_text
from .expr import ParseError, parse, to_text
from .main import main

__all__ = ["Context", "ParseError", "evaluate", "evaluate_text", "main", "parse", "to_text"]
