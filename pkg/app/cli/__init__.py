"""
Command-line interface.
"""
from app.cli.parser import build_parser
from app.cli.commands import COMMANDS

__all__ = ["build_parser", "COMMANDS"]
