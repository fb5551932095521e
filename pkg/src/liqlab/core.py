"""Domain types and position-health math for over-collateralized lending.

All money amounts are ``Dec`` values. Collateral and debt balances are kept
in native asset units; USD values are obtained through an oracle snapshot.
Functions here are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import MissingPriceError, MissingThresholdError, InvalidParamsError
from .fixedpoint import Dec, ZERO, ONE


@dataclass(frozen=True)
class Asset:
    """A currency identified by symbol; ``decimals`` is native-unit metadata."""

    symbol: str
    decimals: int = 18

    def __post_init__(self):
        if not self.symbol:
            raise ValueError("asset symbol must be non-empty")
        if not 0 <= self.decimals <= 18:
            raise ValueError(f"asset decimals out of range [0, 18]: {self.decimals}")


@dataclass(frozen=True)
class OracleSnapshot:
    """Per-asset USD prices at a block height. Every price must be positive."""

    prices: Mapping[Asset, Dec]
    block: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prices", dict(self.prices))
        for asset, price in self.prices.items():
            if price <= ZERO:
                raise ValueError(f"oracle price for {asset.symbol} must be > 0")

    def price(self, asset: Asset) -> Dec:
        try:
            return self.prices[asset]
        except KeyError:
            raise MissingPriceError(asset.symbol) from None


@dataclass(frozen=True)
class RiskParams:
    """Per-asset liquidation thresholds plus protocol-level spread and close factor.

    Construction enforces the range invariants (0 < LT < 1, LS >= 0,
    0 < CF <= 1). The stronger validity prerequisite LT*(1+LS) < 1 is a
    separate check, see :func:`validate_params`.

    ``cf_per_debt_asset`` switches the close-factor cap from the aggregate
    debt value to the outstanding value of the repaid debt asset.
    """

    lt: Mapping[Asset, Dec]
    ls: Dec
    cf: Dec
    cf_per_debt_asset: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lt", dict(self.lt))
        for asset, threshold in self.lt.items():
            if not ZERO < threshold < ONE:
                raise ValueError(
                    f"liquidation threshold for {asset.symbol} outside (0, 1): {threshold}"
                )
        if self.ls < ZERO:
            raise ValueError(f"liquidation spread must be >= 0: {self.ls}")
        if not ZERO < self.cf <= ONE:
            raise ValueError(f"close factor outside (0, 1]: {self.cf}")

    def threshold(self, asset: Asset) -> Dec:
        try:
            return self.lt[asset]
        except KeyError:
            raise MissingThresholdError(asset.symbol) from None


def _clean_amounts(name: str, amounts: Mapping[Asset, Dec]) -> dict:
    cleaned = {}
    for asset, amount in amounts.items():
        if amount < ZERO:
            raise ValueError(f"negative {name} amount for {asset.symbol}: {amount}")
        if amount > ZERO:
            cleaned[asset] = amount
    return cleaned


@dataclass(frozen=True)
class Position:
    """A borrower's collateral and debt balances in native units.

    Zero-valued entries are dropped on construction so two positions with
    the same economic content compare equal.
    """

    owner: str
    collateral: Mapping[Asset, Dec] = field(default_factory=dict)
    debt: Mapping[Asset, Dec] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "collateral", _clean_amounts("collateral", self.collateral))
        object.__setattr__(self, "debt", _clean_amounts("debt", self.debt))


@dataclass(frozen=True)
class PositionValues:
    """USD valuation of a position: total collateral, total debt, borrowing capacity."""

    c: Dec
    d: Dec
    bc: Dec

    def __post_init__(self):
        if self.c < ZERO or self.d < ZERO:
            raise ValueError("position values must be non-negative")
        if not ZERO <= self.bc <= self.c:
            raise ValueError(f"borrowing capacity outside [0, c]: bc={self.bc}, c={self.c}")


def position_values(position: Position, oracle: OracleSnapshot, params: RiskParams) -> PositionValues:
    """Value a position at the snapshot: c = sum(col*price), d = sum(debt*price),
    bc = sum(col*price*LT)."""
    c = ZERO
    bc = ZERO
    for asset, amount in position.collateral.items():
        value = amount * oracle.price(asset)
        c = c + value
        bc = bc + value * params.threshold(asset)
    d = ZERO
    for asset, amount in position.debt.items():
        d = d + amount * oracle.price(asset)
    return PositionValues(c=c, d=d, bc=bc)


def collateralization_ratio(values: PositionValues) -> Optional[Dec]:
    """c/d, or None when the position has no debt."""
    if values.d == ZERO:
        return None
    return values.c / values.d


def health_factor(values: PositionValues) -> Optional[Dec]:
    """bc/d, or None when the position has no debt (treated as healthy)."""
    if values.d == ZERO:
        return None
    return values.bc / values.d


def is_liquidatable(values: PositionValues) -> bool:
    """True iff the position has debt and its health factor is strictly below 1.

    Compares bc < d directly, which is the exact form of bc/d < 1 and avoids
    the division's rounding at the boundary.
    """
    return values.d > ZERO and values.bc < values.d


def validate_params(params: RiskParams) -> Optional[str]:
    """Return None when params are valid, else a reason string.

    Validity requires LT*(1+LS) < 1 strictly for every asset (the prerequisite
    for a fixed-spread liquidation to be able to raise the health factor) and
    0 < CF <= 1.
    """
    if not ZERO < params.cf <= ONE:
        return f"close factor outside (0, 1]: {params.cf}"
    one_plus_ls = ONE + params.ls
    for asset, threshold in sorted(params.lt.items(), key=lambda item: item[0].symbol):
        product = threshold * one_plus_ls
        if product >= ONE:
            return (
                f"LT*(1+LS) must be < 1: asset {asset.symbol} has "
                f"{threshold}*(1+{params.ls}) = {product}"
            )
    return None


def ensure_valid_params(params: RiskParams) -> None:
    """Raise InvalidParamsError when validate_params reports a problem."""
    reason = validate_params(params)
    if reason is not None:
        raise InvalidParamsError(reason)
