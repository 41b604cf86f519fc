"""(s, S) reorder rule: the policy parameters and the order-quantity decision."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError

__all__ = ["PolicyParams", "BASELINE_PARAMS", "decide_order"]


@dataclass(frozen=True)
class PolicyParams:
    """Reorder point s and order-up-to level S, with 0 <= s < S."""

    reorder_point: int
    order_up_to: int

    def __post_init__(self) -> None:
        if not (0 <= self.reorder_point < self.order_up_to):
            raise InvalidParameterError(
                f"policy must satisfy 0 <= s < S, got s={self.reorder_point}, S={self.order_up_to}"
            )


# Static baseline shipped as a named default; also re-derivable through the
# optimizer with the demand rate pinned at its long-run average of 10.
BASELINE_PARAMS = PolicyParams(reorder_point=25, order_up_to=50)


def decide_order(position: int, params: PolicyParams) -> int:
    """Order up to S when the inventory position is at or below s, else nothing.

    The trigger is inclusive (position == s orders), and the quantity tops the
    position up to exactly S.
    """
    if position <= params.reorder_point:
        return params.order_up_to - position
    return 0
