"""Shared exception types."""


class TowerkitError(Exception):
    pass


class BoundError(TowerkitError):
    """A construction was asked for degrees beyond its computed bound."""


class CapExceeded(TowerkitError):
    """An enumeration grew past the configured cap.

    Carries enough context to report which construction and which index
    object blew up, so suite runners can downgrade to a 'capped' verdict
    instead of crashing.
    """

    def __init__(self, context: str, count: int, cap: int):
        super().__init__(f"enumeration cap exceeded in {context}: {count} > {cap}")
        self.context = context
        self.count = count
        self.cap = cap


class LabelCollision(TowerkitError):
    """Join of complexes with overlapping vertex labels and relabeling disabled."""


class SpecParseError(TowerkitError):
    """CLI object mini-language parse failure; carries the token position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at token {position})")
        self.position = position
