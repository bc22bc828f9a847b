"""Product-mix auctions with strong-substitutes bids.

Bids are rows ``[v_1, ..., v_n, w]``. Values are ints, decimal strings such as
``"6.1"`` or ``fractions.Fraction``; weights are non-zero ints.
"""

import json

from ._core import (
    AuctionError,
    allocate,
    clearing_price,
    generate,
    indirect_utility,
    is_demanded,
    validate,
    valuation,
)


def load_auction(text):
    """Parse auction-file JSON into ``(bidders, target)`` for :func:`allocate`."""
    doc = json.loads(text)
    bidders = {b["name"]: b["bids"] for b in doc["bidders"]}
    return bidders, doc["target"]


__all__ = [
    "AuctionError",
    "allocate",
    "clearing_price",
    "generate",
    "indirect_utility",
    "is_demanded",
    "load_auction",
    "validate",
    "valuation",
]
