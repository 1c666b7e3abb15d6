"""Physical-layer delivery: fading draws, cofactor precoders, linear decoding.

Per partition the transmitters serve one cooperation group at a time.  A
message meant for receiver group D is precoded with the cofactors of the
bottom row of the matrix whose other rows are the channel rows of the
unintended receivers, so its superposition vanishes there exactly (up to
floating point).  Each receiver then sees only the messages it wants and
solves a square symbol-extension system; decoded symbols per slot give
the measured per-receiver DoF.

Each coded message rides as one unit-power complex symbol derived from
its payload; recovering the symbol within tolerance delivers the payload.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .model import (
    NodeSet,
    ParameterError,
    Partition,
    ShuffleConfig,
    SystemParams,
    enum_partitions,
    enum_subsets,
)
from .codec import (
    CodedMessage,
    admissible_pairs,
    decode_segment,
    encode_partition,
    segment_ivs,
)
from .placement import build_placement, map_phase, required_ivs

DEFAULT_TOLERANCE = 1e-8
CONDITION_GUARD = 1e8


class ChannelConditionError(RuntimeError):
    """A received matrix exceeded the condition guard; resample the channel."""


@dataclass(frozen=True)
class ChannelRealization:
    """i.i.d. CN(0,1) gains h[j, m, d] for receivers j, transmitters m, slots d."""

    K: int
    slots: int
    seed: int
    gains: np.ndarray  # complex, shape (K, K, slots), 0-based internally

    def gain(self, j: int, m: int, d: int) -> complex:
        """Gain from transmitter m to receiver j in slot d (all 1-based)."""
        return self.gains[j - 1, m - 1, d - 1]

    def row(self, j: int, tx: NodeSet, d: int) -> np.ndarray:
        return np.array([self.gain(j, m, d) for m in tx])


@dataclass(frozen=True)
class PrecoderSet:
    """Unit-norm beamforming vectors per (dest group, slot), over the active
    transmitters, each nulled at its group's unintended receivers."""

    active_tx: NodeSet
    null_targets: dict[NodeSet, NodeSet]
    vectors: dict[tuple[NodeSet, int], np.ndarray]

    def vector(self, dest_group: NodeSet, d: int) -> np.ndarray:
        return self.vectors[(dest_group, d)]

    def max_residual(self, channel: "ChannelRealization") -> float:
        """Worst |h.w| / ||h|| over all nulled receivers, slots and groups."""
        worst = 0.0
        for (dest_group, d), w in self.vectors.items():
            for psi in self.null_targets[dest_group]:
                h = channel.row(psi, self.active_tx, d)
                scale = float(np.linalg.norm(h)) or 1.0
                worst = max(worst, float(abs(np.dot(h, w))) / scale)
        return worst


@dataclass
class DeliveryReport:
    """What a simulated delivery achieved, with its numerical health."""

    partition: int
    regime: str
    slots_used: int
    symbols_per_receiver: int
    measured_dof: Fraction
    max_condition: float
    max_residual: float
    max_symbol_error: float
    delivered: dict[int, dict[tuple, bytes]] = field(repr=False, default_factory=dict)
    noise_mse: float | None = None

    def summary(self) -> dict:
        return {
            "partition": self.partition,
            "regime": self.regime,
            "slots_used": self.slots_used,
            "symbols_per_receiver": self.symbols_per_receiver,
            "measured_dof": str(self.measured_dof),
            "max_condition": self.max_condition,
            "max_residual": self.max_residual,
            "max_symbol_error": self.max_symbol_error,
            "noise_mse": self.noise_mse,
        }


def draw_channel(K: int, slots: int, seed: int) -> ChannelRealization:
    """Unit-variance circularly symmetric complex Gaussian gains."""
    if slots < 1:
        raise ParameterError(f"slots must be >= 1, got {slots}")
    rng = np.random.default_rng(seed)
    re = rng.standard_normal((K, K, slots))
    im = rng.standard_normal((K, K, slots))
    return ChannelRealization(K=K, slots=slots, seed=seed, gains=(re + 1j * im) / np.sqrt(2.0))


def _det(mat: np.ndarray) -> complex:
    n = mat.shape[0]
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(mat[0, 0])
    if n == 2:
        return complex(mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0])
    if n == 3:
        return complex(
            mat[0, 0] * (mat[1, 1] * mat[2, 2] - mat[1, 2] * mat[2, 1])
            - mat[0, 1] * (mat[1, 0] * mat[2, 2] - mat[1, 2] * mat[2, 0])
            + mat[0, 2] * (mat[1, 0] * mat[2, 1] - mat[1, 1] * mat[2, 0])
        )
    return complex(np.linalg.det(mat))


def neutralizing_precoder(
    channel: ChannelRealization, d: int, active_tx: NodeSet, null_rx: NodeSet
) -> np.ndarray:
    """Cofactors of the bottom row of the channel matrix of the nulled receivers.

    With |active_tx| = |null_rx| + 1, the inner product of the result with
    any nulled receiver's channel row is a determinant with a repeated row,
    hence exactly zero.  An empty null set yields the scalar precoder (1,).
    """
    n = len(active_tx)
    if n != len(null_rx) + 1:
        raise ParameterError(
            f"need |active_tx| = |null_rx| + 1, got {n} and {len(null_rx)}"
        )
    rows = np.array(
        [[channel.gain(psi, m, d) for m in active_tx] for psi in null_rx]
    ).reshape(n - 1, n)
    w = np.empty(n, dtype=complex)
    for col in range(n):
        minor = np.delete(rows, col, axis=1)
        w[col] = (-1) ** (n + col + 1) * _det(minor)
    return w


def payload_symbol(message: CodedMessage) -> complex:
    """Deterministic unit-power symbol for a message (a fixture, not a modem)."""
    tag = hashlib.blake2b(
        repr(
            (message.partition, message.dest_group.members, message.coop.members)
        ).encode()
        + message.payload,
        digest_size=8,
    ).digest()
    phase = 2.0 * np.pi * (int.from_bytes(tag, "little") / 2**64)
    return complex(np.cos(phase), np.sin(phase))


def _sub_symbol(message: CodedMessage, chunk_index: int, chunk: bytes) -> complex:
    tag = hashlib.blake2b(
        repr(
            (
                message.partition,
                message.dest_group.members,
                message.coop.members,
                chunk_index,
            )
        ).encode()
        + chunk,
        digest_size=8,
    ).digest()
    phase = 2.0 * np.pi * (int.from_bytes(tag, "little") / 2**64)
    return complex(np.cos(phase), np.sin(phase))


@dataclass
class _BlockStats:
    max_condition: float = 0.0
    max_residual: float = 0.0
    max_symbol_error: float = 0.0
    noise_sq: float = 0.0
    noise_n: int = 0


def build_precoders(
    channel: ChannelRealization,
    slots: range,
    active_tx: NodeSet,
    receivers: NodeSet,
    dest_groups: list[NodeSet],
) -> PrecoderSet:
    """Cofactor precoders for every (dest group, slot), normalized."""
    vectors: dict[tuple[NodeSet, int], np.ndarray] = {}
    null_targets = {dg: receivers - dg for dg in dest_groups}
    for dest_group in dest_groups:
        for d in slots:
            w = neutralizing_precoder(channel, d, active_tx, null_targets[dest_group])
            norm = np.linalg.norm(w)
            if norm == 0.0:
                raise ChannelConditionError("degenerate precoder (zero cofactors)")
            vectors[(dest_group, d)] = w / norm
    return PrecoderSet(active_tx=active_tx, null_targets=null_targets, vectors=vectors)


def _deliver_block(
    channel: ChannelRealization,
    slot0: int,
    gamma: int,
    active: NodeSet,
    receivers: NodeSet,
    unknowns: list[tuple[NodeSet, complex, object]],
    stats: _BlockStats,
    tol: float,
    cond_guard: float,
    rng_noise: np.random.Generator | None,
    noise_sigma: float,
    delivered: dict[int, dict],
) -> None:
    """One symbol-extension block: precode, superpose, solve per receiver.

    `unknowns` holds (dest group, transmitted symbol, delivery token); the
    token is recorded for every receiver in the dest group whose solved
    symbol matches the transmitted one within `tol` (relative).
    """
    slots = range(slot0, slot0 + gamma)
    precoders = build_precoders(
        channel, slots, active, receivers, [dg for dg, _s, _t in unknowns]
    )
    stats.max_residual = max(stats.max_residual, precoders.max_residual(channel))
    coeff: dict[tuple[NodeSet, int], dict[int, complex]] = {}
    for d in slots:
        for dest_group, _sym, _token in unknowns:
            w = precoders.vector(dest_group, d)
            coeff[(dest_group, d)] = {
                j: complex(np.dot(channel.row(j, active, d), w)) for j in receivers
            }

    received: dict[tuple[int, int], complex] = {}
    for d in range(slot0, slot0 + gamma):
        for j in receivers:
            y = sum(coeff[(dg, d)][j] * sym for dg, sym, _tok in unknowns)
            if rng_noise is not None:
                y += noise_sigma * complex(
                    rng_noise.standard_normal(), rng_noise.standard_normal()
                ) / np.sqrt(2.0)
            received[(j, d)] = y

    for j in receivers:
        wanted = [(dg, sym, tok) for dg, sym, tok in unknowns if j in dg]
        if len(wanted) != gamma:
            raise ParameterError(
                f"receiver {j} wants {len(wanted)} symbols over {gamma} slots"
            )
        A = np.array(
            [
                [coeff[(dg, d)][j] for dg, _s, _t in wanted]
                for d in range(slot0, slot0 + gamma)
            ]
        )
        cond = float(np.linalg.cond(A))
        stats.max_condition = max(stats.max_condition, cond)
        if cond > cond_guard:
            raise ChannelConditionError(
                f"condition number {cond:.3e} exceeds guard {cond_guard:.1e}"
            )
        y = np.array([received[(j, d)] for d in range(slot0, slot0 + gamma)])
        x_hat = np.linalg.solve(A, y)
        for (dg, sym, token), est in zip(wanted, x_hat):
            err = float(abs(est - sym) / abs(sym))
            stats.max_symbol_error = max(stats.max_symbol_error, err)
            if rng_noise is not None:
                stats.noise_sq += err * err
                stats.noise_n += 1
            if rng_noise is not None or err < tol:
                delivered.setdefault(j, {})[token] = True


def simulate_partition_case_a(
    partition: Partition,
    config: ShuffleConfig,
    channel: ChannelRealization,
    messages: list[CodedMessage],
    tol: float = DEFAULT_TOLERANCE,
    cond_guard: float = CONDITION_GUARD,
    snr_db: float | None = None,
) -> DeliveryReport:
    """Single-shot neutralized delivery; needs s + t >= K_r + 1.

    Cooperation groups are served sequentially; each uses Gamma =
    C(K_r-1, s-1) slots and its lexicographically smallest K_r - s + 1
    members as transmitters.  Every receiver decodes its Gamma desired
    symbols per group, a per-receiver DoF of exactly 1.
    """
    s, t, K_r = config.s, config.t, config.K_r
    if s + t < K_r + 1:
        raise ParameterError(f"single-shot regime needs s+t >= K_r+1, got s={s}, t={t}, K_r={K_r}")
    gamma = math.comb(K_r - 1, s - 1)
    by_group: dict[NodeSet, list[CodedMessage]] = {}
    for msg in messages:
        by_group.setdefault(msg.coop, []).append(msg)
    coop_groups = enum_subsets(partition.tx, t)
    needed = len(coop_groups) * gamma
    if channel.slots < needed:
        raise ParameterError(f"channel has {channel.slots} slots, need {needed}")

    stats = _BlockStats()
    rng_noise = None
    noise_sigma = 0.0
    if snr_db is not None:
        rng_noise = np.random.default_rng(channel.seed ^ 0xA5A5)
        noise_sigma = 10.0 ** (-snr_db / 20.0)
    recovered: dict[int, dict] = {}
    slot0 = 1
    for coop in coop_groups:
        active = NodeSet(coop.members[: K_r - s + 1])
        unknowns = [
            (m.dest_group, payload_symbol(m), m) for m in sorted(
                by_group.get(coop, []), key=lambda m: m.dest_group
            )
        ]
        _deliver_block(
            channel, slot0, gamma, active, partition.rx, unknowns,
            stats, tol, cond_guard, rng_noise, noise_sigma, recovered,
        )
        slot0 += gamma

    delivered = {
        j: {
            (m.partition, m.dest_group.members, m.coop.members): m.payload
            for m in tokens
        }
        for j, tokens in recovered.items()
    }
    per_receiver = min(len(recovered.get(j, {})) for j in partition.rx)
    return DeliveryReport(
        partition=partition.index,
        regime="single_shot",
        slots_used=needed,
        symbols_per_receiver=per_receiver,
        measured_dof=Fraction(per_receiver, needed),
        max_condition=stats.max_condition,
        max_residual=stats.max_residual,
        max_symbol_error=stats.max_symbol_error,
        delivered=delivered,
        noise_mse=(stats.noise_sq / stats.noise_n) if stats.noise_n else None,
    )


def simulate_case_c_timedivision(
    partition: Partition,
    config: ShuffleConfig,
    channel: ChannelRealization,
    messages: list[CodedMessage],
    tol: float = DEFAULT_TOLERANCE,
    cond_guard: float = CONDITION_GUARD,
    snr_db: float | None = None,
) -> DeliveryReport:
    """Time-division delivery for s + t <= K_r - 1.

    Each message splits into C(K_r-s, t-1) sub-messages, one per size
    (s+t-1) receiver set containing its group; every receiver set is
    served as its own small network in which the single-shot scheme
    applies.  Per-receiver DoF by slot count is r / K_r.
    """
    s, t, K_r = config.s, config.t, config.K_r
    if s + t > K_r - 1:
        raise ParameterError(
            f"time-division regime needs s+t <= K_r-1, got s={s}, t={t}, K_r={K_r}"
        )
    g = s + t - 1
    n_chunks = math.comb(K_r - s, t - 1)
    gamma = math.comb(g - 1, s - 1)
    rx_sets = enum_subsets(partition.rx, g)
    coop_groups = enum_subsets(partition.tx, t)
    needed = len(rx_sets) * len(coop_groups) * gamma
    if channel.slots < needed:
        raise ParameterError(f"channel has {channel.slots} slots, need {needed}")

    chunks: dict[tuple, list[bytes]] = {}
    chunk_sets: dict[tuple, list[NodeSet]] = {}
    for msg in messages:
        if len(msg.payload) % n_chunks != 0:
            raise ParameterError(
                f"payload of {len(msg.payload)} bytes does not split into {n_chunks} chunks"
            )
        step = len(msg.payload) // n_chunks
        key = (msg.dest_group, msg.coop)
        chunks[key] = [msg.payload[i * step : (i + 1) * step] for i in range(n_chunks)]
        chunk_sets[key] = [grp for grp in rx_sets if msg.dest_group.issubset(grp)]

    stats = _BlockStats()
    rng_noise = None
    noise_sigma = 0.0
    if snr_db is not None:
        rng_noise = np.random.default_rng(channel.seed ^ 0xA5A5)
        noise_sigma = 10.0 ** (-snr_db / 20.0)
    recovered: dict[int, dict] = {}
    slot0 = 1
    for group in rx_sets:
        for coop in coop_groups:
            unknowns = []
            for dest_group in enum_subsets(group, s):
                key = (dest_group, coop)
                idx = chunk_sets[key].index(group)
                chunk = chunks[key][idx]
                msg = CodedMessage(partition.index, dest_group, coop, chunk)
                token = (dest_group, coop, idx)
                unknowns.append((dest_group, _sub_symbol(msg, idx, chunk), token))
            _deliver_block(
                channel, slot0, gamma, coop, group, unknowns,
                stats, tol, cond_guard, rng_noise, noise_sigma, recovered,
            )
            slot0 += gamma

    # Reassemble: a receiver holds a message once it has all its chunks.
    delivered: dict[int, dict[tuple, bytes]] = {}
    sub_per_receiver = min(len(recovered.get(j, {})) for j in partition.rx)
    for j, tokens in recovered.items():
        out: dict[tuple, bytes] = {}
        for (dest_group, coop), parts in chunks.items():
            if j not in dest_group:
                continue
            if all((dest_group, coop, i) in tokens for i in range(n_chunks)):
                out[(partition.index, dest_group.members, coop.members)] = b"".join(parts)
        delivered[j] = out
    return DeliveryReport(
        partition=partition.index,
        regime="time_division",
        slots_used=needed,
        symbols_per_receiver=sub_per_receiver,
        measured_dof=Fraction(sub_per_receiver, needed),
        max_condition=stats.max_condition,
        max_residual=stats.max_residual,
        max_symbol_error=stats.max_symbol_error,
        delivered=delivered,
        noise_mse=(stats.noise_sq / stats.noise_n) if stats.noise_n else None,
    )


def simulation_bits(config: ShuffleConfig, requested_bits: int) -> int:
    """Least B >= requested that the codec AND the simulator can split evenly.

    On top of the codec's segment rule (B a multiple of 8 * segments per
    block), the time-division regime cuts each payload into
    C(K_r-s, t-1) chunks, so the segment byte length must divide by that
    too.
    """
    from math import gcd

    from .codec import round_up_bits, segments_per_block

    bits = round_up_bits(config, requested_bits)
    s, t, K_r = config.s, config.t, config.K_r
    if s + t <= K_r - 1 and t > 1:
        n_chunks = math.comb(K_r - s, t - 1)
        eta1, eta2 = config.params.require_symmetric()
        step = 8 * segments_per_block(config)
        # payload bytes per message = eta1*eta2*bits/step; make it a
        # multiple of n_chunks
        k = bits // step
        need = n_chunks // gcd(eta1 * eta2, n_chunks)
        k = -(-k // need) * need
        bits = k * step
    return bits


def partition_slots(config: ShuffleConfig) -> int:
    """Channel slots one partition needs under the applicable regime."""
    s, t, K_r, K_t = config.s, config.t, config.K_r, config.K_t
    if s + t >= K_r + 1:
        return math.comb(K_t, t) * math.comb(K_r - 1, s - 1)
    if s + t <= K_r - 1:
        g = s + t - 1
        return math.comb(K_r, g) * math.comb(K_t, t) * math.comb(g - 1, s - 1)
    raise ParameterError(
        "s + t = K_r sits in the asymptotic-alignment regime, which is not simulated"
    )


def simulate_partition(
    partition: Partition,
    config: ShuffleConfig,
    channel: ChannelRealization,
    messages: list[CodedMessage],
    **kwargs,
) -> DeliveryReport:
    """Dispatch to the regime that applies to this configuration."""
    if config.s + config.t >= config.K_r + 1:
        return simulate_partition_case_a(partition, config, channel, messages, **kwargs)
    if config.s + config.t <= config.K_r - 1:
        return simulate_case_c_timedivision(partition, config, channel, messages, **kwargs)
    raise ParameterError(
        "s + t = K_r sits in the asymptotic-alignment regime, which is not simulated"
    )


def _channel_seed(seed: int, p: int, attempt: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{p}:{attempt}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def simulate_with_resample(
    partition: Partition,
    config: ShuffleConfig,
    messages: list[CodedMessage],
    seed: int,
    **kwargs,
) -> DeliveryReport:
    """Run a partition; on a condition-guard trip, resample the channel once."""
    slots = partition_slots(config)
    for attempt in (0, 1):
        channel = draw_channel(
            config.params.K, slots, _channel_seed(seed, partition.index, attempt)
        )
        try:
            return simulate_partition(partition, config, channel, messages, **kwargs)
        except ChannelConditionError:
            if attempt == 1:
                raise
    raise AssertionError("unreachable")


@dataclass
class VerificationReport:
    ok: bool
    failures: list[tuple[int, int, int]]
    partitions: int
    slots_total: int
    max_condition: float
    max_residual: float
    max_symbol_error: float
    measured_dof: Fraction | None

    def summary(self) -> dict:
        return {
            "ok": self.ok,
            "failures": self.failures,
            "partitions": self.partitions,
            "slots_total": self.slots_total,
            "max_condition": self.max_condition,
            "max_residual": self.max_residual,
            "max_symbol_error": self.max_symbol_error,
            "measured_dof": str(self.measured_dof) if self.measured_dof else None,
        }


def _apply_fault(messages: list[CodedMessage], part: Partition, corrupt) -> None:
    if corrupt is not None and corrupt[0] == part.index:
        m = messages[corrupt[1]]
        bad = bytes([m.payload[0] ^ 0xFF]) + m.payload[1:]
        messages[corrupt[1]] = CodedMessage(m.partition, m.dest_group, m.coop, bad)


def _verify_reassembly(
    params: SystemParams,
    placement,
    store,
    segments,
    config: ShuffleConfig,
    delivered: dict[int, dict[tuple, bytes]],
    partitions: list[Partition],
) -> list[tuple[int, int, int]]:
    """Reassemble every required IV per node; return (node, q, n) mismatches."""
    failures: list[tuple[int, int, int]] = []
    nbytes = params.B // 8
    for k in range(1, params.K + 1):
        blocks: dict[NodeSet, bytes | None] = {}
        for (q, n) in sorted(required_ivs(placement, k)):
            storage = placement.file_to_nodes[n]
            if storage not in blocks:
                blocks[storage] = _reassemble_block(
                    k, storage, config, segments, delivered.get(k, {}), partitions
                )
            block = blocks[storage]
            if block is None:
                failures.append((k, q, n))
                continue
            outputs = sorted(placement.reduce_assignment[k])
            files = sorted(
                n2 for n2, grp in placement.file_to_nodes.items() if grp == storage
            )
            pos = (outputs.index(q) * len(files) + files.index(n)) * nbytes
            if block[pos : pos + nbytes] != store.get(q, n):
                failures.append((k, q, n))
    return failures


def end_to_end_verify(
    params: SystemParams,
    config: ShuffleConfig,
    seed: int,
    tol: float = DEFAULT_TOLERANCE,
    cond_guard: float = CONDITION_GUARD,
    corrupt: tuple[int, int] | None = None,
) -> tuple[bool, VerificationReport]:
    """Placement -> map -> segment -> encode -> channel -> XOR decode -> compare.

    True iff every node reassembles every required IV byte-exactly.
    `corrupt=(p, i)` flips a byte of the i-th message of partition p before
    transmission, for fault-injection tests.
    """
    placement = build_placement(params)
    store = map_phase(placement, params, seed)
    segments = segment_ivs(placement, config, store)
    partitions = enum_partitions(params.K, config.K_t)

    delivered: dict[int, dict[tuple, bytes]] = {k: {} for k in range(1, params.K + 1)}
    slots_total = 0
    max_cond = max_res = max_err = 0.0
    dof = None
    for part in partitions:
        messages = encode_partition(segments, part, config)
        _apply_fault(messages, part, corrupt)
        report = simulate_with_resample(
            part, config, messages, seed, tol=tol, cond_guard=cond_guard
        )
        slots_total += report.slots_used
        max_cond = max(max_cond, report.max_condition)
        max_res = max(max_res, report.max_residual)
        max_err = max(max_err, report.max_symbol_error)
        dof = report.measured_dof if dof is None else min(dof, report.measured_dof)
        for j, got in report.delivered.items():
            delivered[j].update(got)

    failures = _verify_reassembly(
        params, placement, store, segments, config, delivered, partitions
    )
    report = VerificationReport(
        ok=not failures,
        failures=failures,
        partitions=len(partitions),
        slots_total=slots_total,
        max_condition=max_cond,
        max_residual=max_res,
        max_symbol_error=max_err,
        measured_dof=dof,
    )
    return report.ok, report


def ideal_verify(
    params: SystemParams,
    config: ShuffleConfig,
    seed: int,
    corrupt: tuple[int, int] | None = None,
) -> tuple[bool, VerificationReport]:
    """XOR-only verification over an ideal channel (every payload delivered)."""
    placement = build_placement(params)
    store = map_phase(placement, params, seed)
    segments = segment_ivs(placement, config, store)
    partitions = enum_partitions(params.K, config.K_t)
    delivered: dict[int, dict[tuple, bytes]] = {k: {} for k in range(1, params.K + 1)}
    for part in partitions:
        messages = encode_partition(segments, part, config)
        _apply_fault(messages, part, corrupt)
        for m in messages:
            key = (m.partition, m.dest_group.members, m.coop.members)
            for j in m.dest_group:
                delivered[j][key] = m.payload
    failures = _verify_reassembly(
        params, placement, store, segments, config, delivered, partitions
    )
    report = VerificationReport(
        ok=not failures,
        failures=failures,
        partitions=len(partitions),
        slots_total=0,
        max_condition=0.0,
        max_residual=0.0,
        max_symbol_error=0.0,
        measured_dof=None,
    )
    return report.ok, report


def _reassemble_block(
    k: int,
    storage: NodeSet,
    config: ShuffleConfig,
    segments,
    delivered: dict[tuple, bytes],
    partitions: list[Partition],
):
    """Decode and concatenate node k's segments of one block, or None if short."""
    parts: list[bytes] = []
    for coop, p in admissible_pairs(k, storage, config, partitions):
        dest_group = NodeSet.of(k) | (storage - coop)
        key = (p, dest_group.members, coop.members)
        payload = delivered.get(key)
        if payload is None:
            return None
        msg = CodedMessage(p, dest_group, coop, payload)
        seg = decode_segment(msg, segments, k)
        parts.append(seg.data)
    return b"".join(parts)
