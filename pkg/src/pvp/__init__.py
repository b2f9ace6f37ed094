"""Prolongation towers, jet groups and component counts for linear
difference-differential systems sigma(X) = A X over concrete fields."""

from pvp.fields import Q_DILATION, SHIFT, OperatorSpec, get_spec

__all__ = ["OperatorSpec", "SHIFT", "Q_DILATION", "get_spec"]
__version__ = "0.1.0"
