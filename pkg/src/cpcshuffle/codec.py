"""Exact combinatorial layer of the shuffle: segmentation, XOR coding, loads.

The unit of addressing is the block v[d_j, U]: all IVs that node j needs
and that live exactly at the size-r storage group U.  Each block is cut
into C(r,t) * C(K-r-1, K_r-s) equal segments, one per admissible
(partition, cooperation-group) pair, ordered by (coop group lex,
partition index ascending).  A coded message for (p, D, B) is the bytewise
XOR of the s segments its receivers are missing; every receiver in D holds
the other s-1 segments locally, so one XOR recovers its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    ConstraintViolation,
    InfeasibleInstance,
    InternalInvariantError,
    NodeSet,
    Partition,
    ShuffleConfig,
    enum_partitions,
    enum_subsets,
)
from .placement import IVStore, PlacementMap


@dataclass(frozen=True, order=True)
class SegmentId:
    """Address of one segment: destination, storage group, partition, coop group."""

    dest: int
    storage: NodeSet
    partition: int
    coop: NodeSet


@dataclass(frozen=True)
class Segment:
    id: SegmentId
    data: bytes


@dataclass(frozen=True)
class CodedMessage:
    """XOR of s segments, sent by coop group B to receiver group D in partition p."""

    partition: int
    dest_group: NodeSet
    coop: NodeSet
    payload: bytes

    def constituents(self) -> list[SegmentId]:
        """The s segment ids whose XOR is the payload."""
        return [
            SegmentId(
                dest=j,
                storage=self.coop | (self.dest_group - NodeSet.of(j)),
                partition=self.partition,
                coop=self.coop,
            )
            for j in self.dest_group
        ]


@dataclass(frozen=True)
class StragglerPlan:
    """Time-division rounds that deliver a partition despite late transmitters.

    Round i carries the messages whose coop group intersects the straggler
    set in exactly i nodes; their effective transmitters are B minus the
    stragglers, never empty while |S| <= t-1.
    """

    partition: int
    stragglers: NodeSet
    rounds: tuple[tuple[tuple[CodedMessage, NodeSet], ...], ...]


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise InternalInvariantError(f"XOR length mismatch: {len(a)} vs {len(b)}")
    return (int.from_bytes(a, "little") ^ int.from_bytes(b, "little")).to_bytes(
        len(a), "little"
    )


def segments_per_block(config: ShuffleConfig) -> int:
    """C(r,t) * C(K-r-1, K_r-s): segments every block is cut into."""
    p = config.params
    return math.comb(p.r, config.t) * math.comb(p.K - p.r - 1, config.K_r - config.s)


def round_up_bits(config: ShuffleConfig, requested_bits: int) -> int:
    """Least B that is a multiple of 8 * segments_per_block and >= requested."""
    step = 8 * segments_per_block(config)
    return max(1, -(-requested_bits // step)) * step


def block_files(placement: PlacementMap, storage: NodeSet) -> list[int]:
    """Files stored exactly at `storage`, ascending (eta1 of them)."""
    return sorted(
        n for n, grp in placement.file_to_nodes.items() if grp == storage
    )


def block_bytes(placement: PlacementMap, store: IVStore, dest: int, storage: NodeSet) -> bytes:
    """Concatenation of the block's IVs: q ascending over W_dest, n ascending."""
    outputs = sorted(placement.reduce_assignment[dest])
    files = block_files(placement, storage)
    return b"".join(store.get(q, n) for q in outputs for n in files)


def admissible_pairs(
    dest: int, storage: NodeSet, config: ShuffleConfig, partitions: list[Partition]
) -> list[tuple[NodeSet, int]]:
    """(coop group, partition) pairs that may carry a segment of this block.

    B runs over size-t subsets of the storage group; p over partitions
    with B transmitting and {dest} plus the rest of the storage group
    receiving.  Ordered (B lex, p ascending).
    """
    pairs = []
    for coop in enum_subsets(storage, config.t):
        listeners = (storage - coop) | NodeSet.of(dest)
        for part in partitions:
            if coop.issubset(part.tx) and listeners.issubset(part.rx):
                pairs.append((coop, part.index))
    return pairs


def segment_ivs(
    placement: PlacementMap, config: ShuffleConfig, store: IVStore
) -> dict[SegmentId, Segment]:
    """Cut every required block into its segments, keyed by SegmentId.

    The i-th admissible (B, p) pair gets the i-th equal slice of the block.
    Raises InfeasibleInstance when the block size is not a whole number of
    bytes per segment (pick B via round_up_bits).
    """
    params = config.params
    n_seg = segments_per_block(config)
    partitions = enum_partitions(params.K, config.K_t)
    eta1, eta2 = params.require_symmetric()
    block_len = eta1 * eta2 * params.B // 8
    if (eta1 * eta2 * params.B) % 8 != 0 or block_len % n_seg != 0:
        raise InfeasibleInstance(
            f"block of {eta1 * eta2 * params.B} bits does not split into "
            f"{n_seg} whole-byte segments; choose B as a multiple of {8 * n_seg}"
        )
    seg_len = block_len // n_seg
    segments: dict[SegmentId, Segment] = {}
    for dest in range(1, params.K + 1):
        others = [k for k in range(1, params.K + 1) if k != dest]
        for storage in enum_subsets(NodeSet(tuple(others)), params.r):
            data = block_bytes(placement, store, dest, storage)
            pairs = admissible_pairs(dest, storage, config, partitions)
            if len(pairs) != n_seg:
                raise InternalInvariantError(
                    f"block (d{dest}, {storage.members}) has {len(pairs)} "
                    f"admissible pairs, expected {n_seg}"
                )
            for i, (coop, p) in enumerate(pairs):
                sid = SegmentId(dest=dest, storage=storage, partition=p, coop=coop)
                segments[sid] = Segment(id=sid, data=data[i * seg_len : (i + 1) * seg_len])
    return segments


def encode_partition(
    segments: dict[SegmentId, Segment], partition: Partition, config: ShuffleConfig
) -> list[CodedMessage]:
    """All C(K_t, t) * C(K_r, s) coded messages of one partition, (B lex, D lex)."""
    messages = []
    for coop in enum_subsets(partition.tx, config.t):
        for dest_group in enum_subsets(partition.rx, config.s):
            payload = b""
            for j in dest_group:
                sid = SegmentId(
                    dest=j,
                    storage=coop | (dest_group - NodeSet.of(j)),
                    partition=partition.index,
                    coop=coop,
                )
                if sid not in segments:
                    raise InternalInvariantError(f"missing segment {sid}")
                payload = (
                    segments[sid].data if not payload else xor_bytes(payload, segments[sid].data)
                )
            messages.append(
                CodedMessage(
                    partition=partition.index,
                    dest_group=dest_group,
                    coop=coop,
                    payload=payload,
                )
            )
    return messages


def decode_segment(
    message: CodedMessage, local_segments: dict[SegmentId, Segment], j: int
) -> Segment:
    """Recover node j's segment by XORing the payload with its s-1 local ones.

    Raises ConstraintViolation when j is not an intended receiver, and
    InternalInvariantError when advertised side information is missing;
    the construction guarantees node j can compute every other constituent
    (its id's storage group contains j).
    """
    if j not in message.dest_group:
        raise ConstraintViolation("j in D", f"node {j} not in {message.dest_group.members}")
    out = message.payload
    target = None
    for sid in message.constituents():
        if sid.dest == j:
            target = sid
            continue
        if j not in sid.storage:
            raise InternalInvariantError(f"node {j} cannot locally build {sid}")
        side = local_segments.get(sid)
        if side is None:
            raise InternalInvariantError(f"side information {sid} unavailable at node {j}")
        out = xor_bytes(out, side.data)
    assert target is not None
    return Segment(id=target, data=out)


def per_partition_load(config: ShuffleConfig) -> tuple[Fraction, Fraction]:
    """(R_p, desired bits per receiver in one partition), both exact.

    R_p = (1/K_r)(1 - r/K) / C(K, K_r) is the per-receiver communication
    load of each partition normalized by NQB.  The second value equals
    R_p * NQB; it collapses to exactly B when C(K-1, r) = C(K-1, K_r-1)
    (e.g. r = K_t or r = K_r - 1, as in the worked 6-node instance).
    """
    p = config.params
    r_p = (
        Fraction(1, config.K_r)
        * (1 - Fraction(p.r, p.K))
        / math.comb(p.K, config.K_r)
    )
    desired_bits = (
        p.eta1
        * p.eta2
        * p.B
        * math.comb(config.K_r - 1, config.s - 1)
        * math.comb(config.K_t, config.t)
        / (math.comb(p.r, config.t) * math.comb(p.K - p.r - 1, config.K_r - config.s))
    )
    if desired_bits != r_p * p.N * p.Q * p.B:
        raise InternalInvariantError("per-partition load identity failed")
    return r_p, desired_bits


def straggler_replan(
    partition: Partition, config: ShuffleConfig, stragglers: NodeSet,
    messages: list[CodedMessage] | None = None,
) -> StragglerPlan:
    """Split a partition's messages into rounds by straggler overlap.

    Requires |S| <= t-1 and S inside the transmitter group; round i holds
    the messages whose coop group contains exactly i stragglers, to be
    sent by the surviving transmitters B minus S.
    """
    if not stragglers.issubset(partition.tx):
        raise ConstraintViolation(
            "S subset of T_p", f"{stragglers.members} not in {partition.tx.members}"
        )
    if len(stragglers) > config.t - 1:
        raise ConstraintViolation(
            "|S| <= t-1", f"{len(stragglers)} stragglers exceed t-1={config.t - 1}"
        )
    if messages is None:
        # Payload-free planning: synthesize empty-payload messages.
        messages = [
            CodedMessage(partition.index, d, b, b"")
            for b in enum_subsets(partition.tx, config.t)
            for d in enum_subsets(partition.rx, config.s)
        ]
    rounds: list[list[tuple[CodedMessage, NodeSet]]] = [
        [] for _ in range(len(stragglers) + 1)
    ]
    for msg in messages:
        overlap = len(msg.coop & stragglers)
        rounds[overlap].append((msg, msg.coop - stragglers))
    return StragglerPlan(
        partition=partition.index,
        stragglers=stragglers,
        rounds=tuple(tuple(rnd) for rnd in rounds),
    )


def straggler_schedule(
    plan: StragglerPlan, config: ShuffleConfig
) -> list[dict]:
    """Per-round latency accounting for a straggler plan, slot counts only.

    Each surviving group sends one original group's messages per
    symbol-extension batch.  Slots per batch are C(K_r-1, s-1) when the
    effective channel still supports single-shot neutralization
    (s + t_eff >= K_r + 1); otherwise the round's slot count is None --
    the shrunken channel needs asymptotic alignment and no delivery-time
    figure is claimed for it.
    """
    s, t, K_r = config.s, config.t, config.K_r
    gamma = math.comb(K_r - 1, s - 1)
    schedule = []
    for i, rnd in enumerate(plan.rounds):
        batches = len({entry[0].coop for entry in rnd})
        t_eff = t - i
        single_shot = s + t_eff >= K_r + 1
        schedule.append(
            {
                "round": i,
                "messages": len(rnd),
                "batches": batches,
                "effective_coop_size": t_eff,
                "slots": batches * gamma if single_shot else None,
            }
        )
    return schedule


def coding_complexity(config: ShuffleConfig) -> int:
    """Total XOR work per user, in bit operations, for encode plus decode.

    C(K,K_r) * (s-1) * (C(K-K_r-1,t-1)C(K_r,s) + C(K-K_r,t)C(K_r-1,s-1))
    * eta1*eta2*B / (C(r,t) * C(K-r-1, K_r-s)); the per-partition message
    counts are multiplied by the full partition count, so each user is
    charged as if active in every partition.
    """
    p = config.params
    s, t, K_r, K_t = config.s, config.t, config.K_r, config.K_t
    eta1, eta2 = p.require_symmetric()
    messages = math.comb(p.K, K_r) * (s - 1) * (
        math.comb(K_t - 1, t - 1) * math.comb(K_r, s)
        + math.comb(K_t, t) * math.comb(K_r - 1, s - 1)
    )
    num = messages * eta1 * eta2 * p.B
    den = math.comb(p.r, t) * math.comb(p.K - p.r - 1, K_r - s)
    if num % den != 0:
        raise InfeasibleInstance(
            f"XOR count {num}/{den} is fractional; choose B via round_up_bits"
        )
    return num // den
