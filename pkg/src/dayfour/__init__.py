"""Canonical forms born by day 3 and bounds on the number born by day 4."""
from .games import GameArena, GameError, GameId, Order, PreconditionError
from .notation import NotationError, elaborate, game, parse, to_text

__all__ = ["GameArena", "GameError", "GameId", "Order", "PreconditionError",
           "NotationError", "elaborate", "game", "parse", "to_text"]
