"""Deterministic block-by-block scenario engine.

A scenario is a closed world: assets, risk parameters, borrower positions,
a complete block-indexed price path, and a fixed list of liquidator agents.
Running it is a pure function of the scenario value; two runs produce
byte-identical serialized logs.

Engine rules, in order of application per block:

* Blocks 0..``blocks`` inclusive are processed in order. Auction clocks tick
  in block units (one block = one time unit).
* The block's oracle snapshot is applied, then the total collateral value is
  recorded (pre-action), then agents act in list order, scanning positions
  in scenario order.
* Fixed-spread agents act only when the net profit (gross minus gas and
  flash fee) is strictly positive; every call is flash-wrapped, and a
  flash revert leaves the position untouched and unlogged. A call that the
  engine would refuse (shortfalls, lost eligibility) is simply not sent.
* Positions with an open auction are off-limits to fixed-spread agents.
* With ``one_liquidation_per_block`` set, at most one liquidation lands per
  position per block, so a two-step agent's second call executes in the
  next block (re-capped against the then-current state).
* Open auctions are checked for termination after agents act; settled
  auctions update the borrower position (tend: whole lot seized, debt
  reduced proportionally by the payment; dent: debt cleared, collateral
  scaled down to the refund fraction) and are logged as auction events.

Liquidator proceeds are marked to the oracle instantly; gas is a flat USD
fee per transaction and interest never accrues.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .auction import (
    AuctionConfig,
    Bid,
    Phase,
    apply_termination,
    check_termination,
    finalize,
    place_bid,
    start_auction,
)
from .core import (
    Asset,
    OracleSnapshot,
    Position,
    RiskParams,
    is_liquidatable,
    position_values,
    validate_params,
)
from .errors import InvalidScenarioError, LiqlabError, ZeroVolumeError
from .fixed_spread import LiquidationCall, execute_liquidation_call, max_repay
from .fixedpoint import Dec, ONE, ZERO
from .strategy import optimal_repays


class Mechanism(enum.Enum):
    FIXED_SPREAD = "fixed-spread"
    AUCTION = "auction"


class PolicyKind(enum.Enum):
    UP_TO_CLOSE_FACTOR = "up-to-close-factor"
    OPTIMAL_TWO_STEP = "optimal-two-step"
    AUCTION_BIDDER = "auction-bidder"


@dataclass(frozen=True)
class ScriptedBid:
    """One entry of an auction bid script; amount is phase-agnostic."""

    time: int
    bidder: str
    amount: Dec
    borrower: Optional[str] = None


@dataclass(frozen=True)
class AgentPolicy:
    agent_id: str
    kind: PolicyKind
    script: tuple = ()


@dataclass(frozen=True)
class LiquidationEvent:
    block: int
    borrower: str
    liquidator: str
    mechanism: Mechanism
    repaid_usd: Dec
    seized_usd: Dec
    gross_profit_usd: Dec
    fees_usd: Dec
    net_profit_usd: Dec


EVENT_FIELDS = (
    "block",
    "borrower",
    "liquidator",
    "mechanism",
    "repaid_usd",
    "seized_usd",
    "gross_profit_usd",
    "fees_usd",
    "net_profit_usd",
)


@dataclass(frozen=True)
class Scenario:
    assets: tuple
    params: RiskParams
    positions: tuple
    price_path: Mapping[int, OracleSnapshot]
    agents: tuple
    blocks: int
    auction_config: AuctionConfig = AuctionConfig(
        auction_length=6, bid_duration=5, min_increment=Dec("0.03")
    )
    gas_fee_usd: Dec = ZERO
    flash_fee_rate: Dec = ZERO
    one_liquidation_per_block: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(self, "positions", tuple(self.positions))
        object.__setattr__(self, "price_path", dict(self.price_path))
        object.__setattr__(self, "agents", tuple(self.agents))


@dataclass(frozen=True)
class Revert:
    """Flash-loan failure: the wrapped liquidation never happened."""

    reason: str = "flash-loan-unprofitable"


def flash_wrap(
    event_gross_profit: Dec, repay_usd: Dec, flash_fee_rate: Dec
) -> Union[Dec, Revert]:
    """Net profit after the flash-loan fee, or a Revert when not positive."""
    if repay_usd <= ZERO:
        raise ValueError(f"flash-wrapped repay must be > 0: {repay_usd}")
    if flash_fee_rate < ZERO:
        raise ValueError(f"flash fee rate must be >= 0: {flash_fee_rate}")
    net = event_gross_profit - repay_usd * flash_fee_rate
    if net > ZERO:
        return net
    return Revert()


@dataclass(frozen=True)
class EventLog:
    """Everything a scenario run produces, with deterministic serializations."""

    events: tuple
    collateral_volume_by_block: Mapping[int, Dec]
    final_positions: tuple

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(
            self, "collateral_volume_by_block", dict(self.collateral_volume_by_block)
        )
        object.__setattr__(self, "final_positions", tuple(self.final_positions))

    def _rows(self):
        for ev in self.events:
            yield (
                str(ev.block),
                ev.borrower,
                ev.liquidator,
                ev.mechanism.value,
                str(ev.repaid_usd),
                str(ev.seized_usd),
                str(ev.gross_profit_usd),
                str(ev.fees_usd),
                str(ev.net_profit_usd),
            )

    def to_csv(self) -> str:
        lines = [",".join(EVENT_FIELDS)]
        lines.extend(",".join(row) for row in self._rows())
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        lines = []
        for row in self._rows():
            record = dict(zip(EVENT_FIELDS, row))
            record["block"] = int(record["block"])
            lines.append(json.dumps(record, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")


def validate_scenario(scenario: Scenario) -> None:
    """Raise InvalidScenarioError naming the offending field."""
    reason = validate_params(scenario.params)
    if reason is not None:
        raise InvalidScenarioError("params", reason)
    if scenario.blocks < 0:
        raise InvalidScenarioError("blocks", f"must be >= 0: {scenario.blocks}")
    if scenario.gas_fee_usd < ZERO:
        raise InvalidScenarioError("gas_fee_usd", f"must be >= 0: {scenario.gas_fee_usd}")
    if scenario.flash_fee_rate < ZERO:
        raise InvalidScenarioError(
            "flash_fee_rate", f"must be >= 0: {scenario.flash_fee_rate}"
        )
    owners = [p.owner for p in scenario.positions]
    if len(owners) != len(set(owners)):
        raise InvalidScenarioError("positions", "duplicate owner identifiers")
    agent_ids = [a.agent_id for a in scenario.agents]
    if len(agent_ids) != len(set(agent_ids)):
        raise InvalidScenarioError("agents", "duplicate agent identifiers")

    referenced = set()
    for position in scenario.positions:
        referenced.update(position.collateral)
        referenced.update(position.debt)
    for block in range(scenario.blocks + 1):
        snapshot = scenario.price_path.get(block)
        if snapshot is None:
            raise InvalidScenarioError("price_path", f"missing snapshot for block {block}")
        for asset in sorted(referenced, key=lambda a: a.symbol):
            if asset not in snapshot.prices:
                raise InvalidScenarioError(
                    "price_path", f"block {block} misses price for {asset.symbol}"
                )
    for position in scenario.positions:
        for asset in position.collateral:
            if asset not in scenario.params.lt:
                raise InvalidScenarioError(
                    "params.lt", f"no threshold for collateral asset {asset.symbol}"
                )


class _Run:
    """Mutable state of one scenario execution."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.positions = {p.owner: p for p in scenario.positions}
        self.order = [p.owner for p in scenario.positions]
        self.events = []
        self.volume = {}
        self.open_auctions = {}
        self.pending_second = {}  # (agent_id, owner) -> planned second repay
        self.liquidated_this_block = set()

    # -- helpers -------------------------------------------------------------

    def _choose_pair(self, position: Position, oracle: OracleSnapshot):
        """Largest-value debt and collateral assets, ties broken by symbol."""
        def best(amounts):
            ranked = sorted(
                amounts.items(),
                key=lambda item: (item[1] * oracle.price(item[0]), item[0].symbol),
            )
            return ranked[-1][0] if ranked else None

        debt_asset = best(position.debt)
        collateral_asset = best(position.collateral)
        if debt_asset is None or collateral_asset is None:
            return None
        return debt_asset, collateral_asset

    def _capped_repay(self, position, oracle, debt_asset, collateral_asset, desired):
        """Clamp a desired repay to what the engine would accept."""
        params = self.scenario.params
        outstanding = position.debt.get(debt_asset, ZERO) * oracle.price(debt_asset)
        collateral_value = position.collateral.get(collateral_asset, ZERO) * oracle.price(
            collateral_asset
        )
        cap = collateral_value / (ONE + params.ls)
        repay = desired
        for bound in (outstanding, cap):
            if bound < repay:
                repay = bound
        return repay

    def _try_fixed_spread(self, block, oracle, owner, debt_asset, collateral_asset, repay, agent_id):
        """Execute one flash-wrapped call; returns True when an event landed."""
        scenario = self.scenario
        if repay <= ZERO:
            return False
        position = self.positions[owner]
        call = LiquidationCall(owner, debt_asset, collateral_asset, repay)
        try:
            receipt = execute_liquidation_call(position, call, oracle, scenario.params)
        except LiqlabError:
            return False  # the transaction would revert, so it is not sent
        gross = receipt.liquidator_profit_usd
        wrapped = flash_wrap(gross, repay, scenario.flash_fee_rate)
        if isinstance(wrapped, Revert):
            return False
        fees = scenario.gas_fee_usd + repay * scenario.flash_fee_rate
        net = gross - fees
        if net <= ZERO:
            return False
        self.positions[owner] = receipt.position_after
        self.liquidated_this_block.add(owner)
        self.events.append(
            LiquidationEvent(
                block=block,
                borrower=owner,
                liquidator=agent_id,
                mechanism=Mechanism.FIXED_SPREAD,
                repaid_usd=receipt.repaid_value_usd,
                seized_usd=receipt.seized_value_usd,
                gross_profit_usd=gross,
                fees_usd=fees,
                net_profit_usd=net,
            )
        )
        return True

    def _blocked(self, owner):
        if owner in self.open_auctions:
            return True
        return (
            self.scenario.one_liquidation_per_block
            and owner in self.liquidated_this_block
        )

    # -- policies ------------------------------------------------------------

    def _act_close_factor(self, agent, block, oracle):
        params = self.scenario.params
        for owner in self.order:
            if self._blocked(owner):
                continue
            position = self.positions[owner]
            values = position_values(position, oracle, params)
            if not is_liquidatable(values):
                continue
            pair = self._choose_pair(position, oracle)
            if pair is None:
                continue
            debt_asset, collateral_asset = pair
            repay = self._capped_repay(
                position, oracle, debt_asset, collateral_asset, max_repay(values, params)
            )
            self._try_fixed_spread(
                block, oracle, owner, debt_asset, collateral_asset, repay, agent.agent_id
            )

    def _act_two_step(self, agent, block, oracle):
        params = self.scenario.params
        # pending second calls scheduled by this agent in an earlier block
        for key in [k for k in self.pending_second if k[0] == agent.agent_id]:
            planned = self.pending_second.pop(key)
            _, owner = key
            if self._blocked(owner):
                continue
            position = self.positions[owner]
            values = position_values(position, oracle, params)
            if not is_liquidatable(values):
                continue
            pair = self._choose_pair(position, oracle)
            if pair is None:
                continue
            debt_asset, collateral_asset = pair
            repay = self._capped_repay(
                position, oracle, debt_asset, collateral_asset,
                min(planned, max_repay(values, params)),
            )
            self._try_fixed_spread(
                block, oracle, owner, debt_asset, collateral_asset, repay, agent.agent_id
            )
        # new two-step plans
        for owner in self.order:
            if self._blocked(owner) or (agent.agent_id, owner) in self.pending_second:
                continue
            position = self.positions[owner]
            values = position_values(position, oracle, params)
            if not is_liquidatable(values):
                continue
            pair = self._choose_pair(position, oracle)
            if pair is None:
                continue
            debt_asset, collateral_asset = pair
            try:
                plan = optimal_repays(
                    values.c, values.d, params.threshold(collateral_asset), params
                )
            except LiqlabError:
                continue
            repay1 = self._capped_repay(
                position, oracle, debt_asset, collateral_asset, plan.repay1
            )
            if not self._try_fixed_spread(
                block, oracle, owner, debt_asset, collateral_asset, repay1, agent.agent_id
            ):
                continue
            if self.scenario.one_liquidation_per_block:
                self.pending_second[(agent.agent_id, owner)] = plan.repay2
                continue
            position = self.positions[owner]
            values = position_values(position, oracle, params)
            if not is_liquidatable(values):
                continue
            repay2 = self._capped_repay(
                position, oracle, debt_asset, collateral_asset,
                min(plan.repay2, max_repay(values, params)),
            )
            self._try_fixed_spread(
                block, oracle, owner, debt_asset, collateral_asset, repay2, agent.agent_id
            )

    def _act_auction_bidder(self, agent, block, oracle):
        params = self.scenario.params
        for owner in self.order:
            if owner in self.open_auctions:
                continue
            if self.scenario.one_liquidation_per_block and owner in self.liquidated_this_block:
                continue
            values = position_values(self.positions[owner], oracle, params)
            if not is_liquidatable(values):
                continue
            self.open_auctions[owner] = start_auction(
                values, self.scenario.auction_config, now=block
            )
        for scripted in agent.script:
            if scripted.time != block:
                continue
            owner = scripted.borrower
            if owner is None:
                if len(self.open_auctions) != 1:
                    raise InvalidScenarioError(
                        "agents.script",
                        f"bid at time {scripted.time} names no borrower while "
                        f"{len(self.open_auctions)} auctions are open",
                    )
                owner = next(iter(self.open_auctions))
            if owner not in self.open_auctions:
                raise InvalidScenarioError(
                    "agents.script", f"no open auction for borrower {owner!r}"
                )
            bid = Bid(bidder=scripted.bidder, amount=scripted.amount, time=scripted.time)
            self.open_auctions[owner] = place_bid(self.open_auctions[owner], bid)

    def _settle_auctions(self, block, oracle):
        params = self.scenario.params
        for owner in list(self.open_auctions):
            auction = self.open_auctions[owner]
            if check_termination(auction, block) is None:
                continue
            auction = apply_termination(auction, block)
            del self.open_auctions[owner]
            if auction.best_bid is None:
                continue  # expired worthless; position stays liquidatable
            values_now = position_values(self.positions[owner], oracle, params)
            settlement = finalize(auction, values_now)
            self.positions[owner] = _apply_settlement(
                self.positions[owner], settlement, values_now
            )
            self.liquidated_this_block.add(owner)
            gross = settlement.winner_profit_usd
            fees = self.scenario.gas_fee_usd
            self.events.append(
                LiquidationEvent(
                    block=block,
                    borrower=owner,
                    liquidator=settlement.winner,
                    mechanism=Mechanism.AUCTION,
                    repaid_usd=settlement.paid_usd,
                    seized_usd=settlement.collateral_value_usd,
                    gross_profit_usd=gross,
                    fees_usd=fees,
                    net_profit_usd=gross - fees,
                )
            )

    # -- main loop -----------------------------------------------------------

    def run(self) -> EventLog:
        scenario = self.scenario
        for block in range(scenario.blocks + 1):
            oracle = scenario.price_path[block]
            total = ZERO
            for owner in self.order:
                for asset, amount in self.positions[owner].collateral.items():
                    total = total + amount * oracle.price(asset)
            self.volume[block] = total
            self.liquidated_this_block = set()
            for agent in scenario.agents:
                if agent.kind is PolicyKind.UP_TO_CLOSE_FACTOR:
                    self._act_close_factor(agent, block, oracle)
                elif agent.kind is PolicyKind.OPTIMAL_TWO_STEP:
                    self._act_two_step(agent, block, oracle)
                else:
                    self._act_auction_bidder(agent, block, oracle)
            self._settle_auctions(block, oracle)
        return EventLog(
            events=tuple(self.events),
            collateral_volume_by_block=self.volume,
            final_positions=tuple(self.positions[o] for o in self.order),
        )


def _apply_settlement(position: Position, settlement, values_now) -> Position:
    """Apply an auction settlement to the borrower's balances.

    Tend ending: the whole lot is seized and the debt shrinks by the payment,
    spread proportionally over the debt assets. Dent ending: the debt is
    cleared and each collateral balance is scaled down to the refunded
    fraction of the lot's current value.
    """
    if settlement.ended_in is Phase.TEND:
        remaining = values_now.d - settlement.paid_usd
        if remaining < ZERO:
            remaining = ZERO
        new_debt = {}
        if values_now.d > ZERO and remaining > ZERO:
            for asset, amount in position.debt.items():
                new_debt[asset] = Dec.mul_div(amount, remaining, values_now.d)
        return Position(owner=position.owner, collateral={}, debt=new_debt)

    new_collateral = {}
    if values_now.c > ZERO and settlement.borrower_refund_usd > ZERO:
        for asset, amount in position.collateral.items():
            new_collateral[asset] = Dec.mul_div(
                amount, settlement.borrower_refund_usd, values_now.c
            )
    return Position(owner=position.owner, collateral=new_collateral, debt={})


def run_scenario(scenario: Scenario) -> EventLog:
    """Run a validated scenario to completion; pure in the scenario value."""
    validate_scenario(scenario)
    return _Run(scenario).run()


def profit_volume_ratio(
    log: EventLog, collateral_volume_by_block: Mapping[int, Dec], period: Sequence[int]
) -> Dec:
    """Accumulated gross liquidation profit over the period divided by the
    period's average collateral volume."""
    blocks = list(period)
    if not blocks:
        raise ValueError("period is empty")
    total_volume = ZERO
    for block in blocks:
        if block not in collateral_volume_by_block:
            raise ValueError(f"no collateral volume recorded for block {block}")
        total_volume = total_volume + collateral_volume_by_block[block]
    average = total_volume / Dec(len(blocks))
    if average == ZERO:
        raise ZeroVolumeError("average collateral volume over the period is zero")
    in_period = set(blocks)
    profit = ZERO
    for event in log.events:
        if event.block in in_period:
            profit = profit + event.gross_profit_usd
    return profit / average


# -- scenario JSON -----------------------------------------------------------


def _dec_field(raw, field_name) -> Dec:
    if isinstance(raw, float):
        raise InvalidScenarioError(field_name, "decimals must be strings, not floats")
    try:
        return Dec(raw)
    except (ValueError, TypeError) as exc:
        raise InvalidScenarioError(field_name, str(exc)) from None


def load_scenario(source) -> Scenario:
    """Build a Scenario from a JSON document (path, JSON text, or dict).

    Decimals are strings. ``price_path`` may be sparse: blocks after 0
    inherit any price they do not override (block 0 must price every asset
    the positions reference).
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = source
        if hasattr(source, "read"):
            text = source.read()
        else:
            text = str(source)
            if not text.lstrip().startswith("{"):
                with open(text, "r", encoding="utf-8") as handle:
                    text = handle.read()
        doc = json.loads(text)
    if not isinstance(doc, dict):
        raise InvalidScenarioError("<root>", "scenario document must be a JSON object")

    assets = {}
    for i, entry in enumerate(doc.get("assets", [])):
        symbol = entry.get("symbol")
        if not symbol:
            raise InvalidScenarioError(f"assets[{i}].symbol", "missing")
        try:
            assets[symbol] = Asset(symbol=symbol, decimals=int(entry.get("decimals", 18)))
        except ValueError as exc:
            raise InvalidScenarioError(f"assets[{i}]", str(exc)) from None

    def lookup(symbol, field_name):
        if symbol not in assets:
            raise InvalidScenarioError(field_name, f"unknown asset {symbol!r}")
        return assets[symbol]

    params_doc = doc.get("params")
    if not isinstance(params_doc, dict):
        raise InvalidScenarioError("params", "missing or not an object")
    lt = {
        lookup(sym, f"params.lt.{sym}"): _dec_field(value, f"params.lt.{sym}")
        for sym, value in params_doc.get("lt", {}).items()
    }
    try:
        params = RiskParams(
            lt=lt,
            ls=_dec_field(params_doc.get("ls", "0"), "params.ls"),
            cf=_dec_field(params_doc.get("cf", "1"), "params.cf"),
            cf_per_debt_asset=bool(params_doc.get("cf_per_debt_asset", False)),
        )
    except ValueError as exc:
        raise InvalidScenarioError("params", str(exc)) from None

    positions = []
    for i, entry in enumerate(doc.get("positions", [])):
        owner = entry.get("owner")
        if not owner:
            raise InvalidScenarioError(f"positions[{i}].owner", "missing")
        collateral = {
            lookup(sym, f"positions[{i}].collateral.{sym}"): _dec_field(
                value, f"positions[{i}].collateral.{sym}"
            )
            for sym, value in entry.get("collateral", {}).items()
        }
        debt = {
            lookup(sym, f"positions[{i}].debt.{sym}"): _dec_field(
                value, f"positions[{i}].debt.{sym}"
            )
            for sym, value in entry.get("debt", {}).items()
        }
        try:
            positions.append(Position(owner=owner, collateral=collateral, debt=debt))
        except ValueError as exc:
            raise InvalidScenarioError(f"positions[{i}]", str(exc)) from None

    blocks = doc.get("blocks")
    if not isinstance(blocks, int) or isinstance(blocks, bool) or blocks < 0:
        raise InvalidScenarioError("blocks", f"must be a non-negative integer: {blocks!r}")

    path_doc = doc.get("price_path")
    if not isinstance(path_doc, dict) or "0" not in path_doc:
        raise InvalidScenarioError("price_path", "must be an object with a block-0 entry")
    price_path = {}
    current = {}
    for block in range(blocks + 1):
        overrides = path_doc.get(str(block), {})
        if not isinstance(overrides, dict):
            raise InvalidScenarioError(f"price_path.{block}", "must be an object")
        for sym, value in overrides.items():
            current[lookup(sym, f"price_path.{block}.{sym}")] = _dec_field(
                value, f"price_path.{block}.{sym}"
            )
        try:
            price_path[block] = OracleSnapshot(prices=dict(current), block=block)
        except ValueError as exc:
            raise InvalidScenarioError(f"price_path.{block}", str(exc)) from None

    agents = []
    for i, entry in enumerate(doc.get("agents", [])):
        agent_id = entry.get("id")
        if not agent_id:
            raise InvalidScenarioError(f"agents[{i}].id", "missing")
        policy_name = str(entry.get("policy", "")).replace("_", "-")
        try:
            kind = PolicyKind(policy_name)
        except ValueError:
            raise InvalidScenarioError(
                f"agents[{i}].policy", f"unknown policy {entry.get('policy')!r}"
            ) from None
        script = []
        for j, raw_bid in enumerate(entry.get("script", [])):
            where = f"agents[{i}].script[{j}]"
            if not isinstance(raw_bid.get("time"), int):
                raise InvalidScenarioError(f"{where}.time", "must be an integer")
            if not raw_bid.get("bidder"):
                raise InvalidScenarioError(f"{where}.bidder", "missing")
            script.append(
                ScriptedBid(
                    time=raw_bid["time"],
                    bidder=raw_bid["bidder"],
                    amount=_dec_field(raw_bid.get("amount"), f"{where}.amount"),
                    borrower=raw_bid.get("borrower"),
                )
            )
        agents.append(AgentPolicy(agent_id=agent_id, kind=kind, script=tuple(script)))

    auction_doc = doc.get("auction_config", {})
    try:
        auction_config = AuctionConfig(
            auction_length=int(auction_doc.get("auction_length", 6)),
            bid_duration=int(auction_doc.get("bid_duration", 5)),
            min_increment=_dec_field(
                auction_doc.get("min_increment", "0.03"), "auction_config.min_increment"
            ),
        )
    except ValueError as exc:
        raise InvalidScenarioError("auction_config", str(exc)) from None

    scenario = Scenario(
        assets=tuple(assets.values()),
        params=params,
        positions=tuple(positions),
        price_path=price_path,
        agents=tuple(agents),
        blocks=blocks,
        auction_config=auction_config,
        gas_fee_usd=_dec_field(doc.get("gas_fee_usd", "0"), "gas_fee_usd"),
        flash_fee_rate=_dec_field(doc.get("flash_fee_rate", "0"), "flash_fee_rate"),
        one_liquidation_per_block=bool(doc.get("one_liquidation_per_block", False)),
        seed=int(doc.get("seed", 0)),
    )
    validate_scenario(scenario)
    return scenario
