"""Editing commands: the unit-cost edges of the program search graph.

Six command families manipulate a workspace the way a user manipulates the
block editor: create, trash, connect (vertically or into a repeat body),
disconnect, and change a parameter.  `apply_command` gives each command its
successor semantics, `enumerate_commands` lists every feasible
specialization in a deterministic order, and `replay` folds a recorded
sequence from the empty workspace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .lang import (
    ANGLES,
    BLOCK_KINDS,
    EMPTY_WORKSPACE,
    MOVE,
    REPEAT,
    REPEAT_COUNTS,
    TURN,
    Block,
    Chain,
    Workspace,
    new_block,
)


class InfeasibleCommand(Exception):
    """A command that cannot be applied to the given workspace."""

    def __init__(self, reason: str, index: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.index = index


@dataclass(frozen=True)
class Get:
    kind: str  # move | turn | repeat


@dataclass(frozen=True)
class Remove:
    target: int


@dataclass(frozen=True)
class ConnectUnder:
    source: int
    dest: int


@dataclass(frozen=True)
class ConnectInside:
    source: int
    dest: int


@dataclass(frozen=True)
class Disconnect:
    target: int


@dataclass(frozen=True)
class Change:
    target: int
    old: int
    new: int


EditCommand = Get | Remove | ConnectUnder | ConnectInside | Disconnect | Change

# Coarsened command families used by the bigram model.  Both connect
# variants share one tag; disconnect is tagged Separate.
TAG_GET = "Get"
TAG_REMOVE = "Remove"
TAG_CONNECT = "Connect"
TAG_CHANGE = "Change"
TAG_SEPARATE = "Separate"
TAG_START = "START"
COMMAND_TAGS = (TAG_GET, TAG_REMOVE, TAG_CONNECT, TAG_CHANGE, TAG_SEPARATE)


def coarsen(command: EditCommand) -> str:
    if isinstance(command, Get):
        return TAG_GET
    if isinstance(command, Remove):
        return TAG_REMOVE
    if isinstance(command, (ConnectUnder, ConnectInside)):
        return TAG_CONNECT
    if isinstance(command, Change):
        return TAG_CHANGE
    if isinstance(command, Disconnect):
        return TAG_SEPARATE
    raise TypeError(f"not an edit command: {command!r}")


# ---------------------------------------------------------------------------
# Structural helpers.  A "stack" is a block together with everything attached
# below it in its chain; nested repeat bodies travel with their block.

def _detach_from_chain(chain: Chain, block_id: int) -> tuple[Chain, Chain | None]:
    for i, b in enumerate(chain):
        if b.id == block_id:
            return chain[:i], chain[i:]
        if b.kind == REPEAT:
            new_body, stack = _detach_from_chain(b.body, block_id)
            if stack is not None:
                nb = replace(b, body=new_body)
                return chain[:i] + (nb,) + chain[i + 1:], stack
    return chain, None


def _detach(w: Workspace, block_id: int) -> tuple[Workspace, Chain]:
    roots: list[Chain] = []
    stack: Chain | None = None
    for chain in w.roots:
        if stack is None:
            chain, stack = _detach_from_chain(chain, block_id)
        if chain:
            roots.append(chain)
    if stack is None:
        raise InfeasibleCommand(f"block {block_id} not found")
    return Workspace(tuple(roots), w.next_id), stack


def _stack_ids(w: Workspace, block_id: int) -> set[int]:
    _, stack = _detach(w, block_id)
    ids: set[int] = set()

    def walk(chain: Chain) -> None:
        for b in chain:
            ids.add(b.id)
            if b.kind == REPEAT:
                walk(b.body)

    walk(stack)
    return ids


def _attach_under(chain: Chain, dest: int, stack: Chain) -> Chain | None:
    for i, b in enumerate(chain):
        if b.id == dest:
            # Displaced children of dest end up appended beneath the stack.
            return chain[:i + 1] + stack + chain[i + 1:]
        if b.kind == REPEAT:
            new_body = _attach_under(b.body, dest, stack)
            if new_body is not None:
                return chain[:i] + (replace(b, body=new_body),) + chain[i + 1:]
    return None


def _attach_inside(chain: Chain, dest: int, stack: Chain) -> Chain | None:
    for i, b in enumerate(chain):
        if b.id == dest:
            # New stack goes at the top of the repeat body; the previous body
            # is appended below it.
            return chain[:i] + (replace(b, body=stack + b.body),) + chain[i + 1:]
        if b.kind == REPEAT:
            new_body = _attach_inside(b.body, dest, stack)
            if new_body is not None:
                return chain[:i] + (replace(b, body=new_body),) + chain[i + 1:]
    return None


def _change_value(chain: Chain, block_id: int, value: int) -> Chain | None:
    for i, b in enumerate(chain):
        if b.id == block_id:
            return chain[:i] + (b.with_value(value),) + chain[i + 1:]
        if b.kind == REPEAT:
            new_body = _change_value(b.body, block_id, value)
            if new_body is not None:
                return chain[:i] + (replace(b, body=new_body),) + chain[i + 1:]
    return None


def _value_domain(block: Block) -> tuple[int, ...]:
    if block.kind == TURN:
        return ANGLES
    if block.kind == REPEAT:
        return REPEAT_COUNTS
    return ()


# ---------------------------------------------------------------------------
# Application semantics.

def apply_command(w: Workspace, command: EditCommand) -> Workspace:
    """Apply one editing command, returning the successor workspace.

    Raises InfeasibleCommand when the command does not make sense in `w`
    (missing ids, cycle-creating connects, stale change values, ...).  The
    input workspace is never mutated.
    """
    if isinstance(command, Get):
        if command.kind not in BLOCK_KINDS:
            raise InfeasibleCommand(f"unknown block type {command.kind!r}")
        block = new_block(w.next_id, command.kind)
        return Workspace(w.roots + ((block,),), w.next_id + 1)

    if isinstance(command, Remove):
        new_w, _ = _detach(w, command.target)
        return new_w

    if isinstance(command, (ConnectUnder, ConnectInside)):
        src, dest = command.source, command.dest
        if src == dest:
            raise InfeasibleCommand("cannot connect a block to itself")
        if w.find(src) is None:
            raise InfeasibleCommand(f"block {src} not found")
        dest_block = w.find(dest)
        if dest_block is None:
            raise InfeasibleCommand(f"block {dest} not found")
        if isinstance(command, ConnectInside) and dest_block.kind != REPEAT:
            raise InfeasibleCommand(f"block {dest} is not a repeat block")
        if dest in _stack_ids(w, src):
            raise InfeasibleCommand(
                f"block {dest} is inside the stack of block {src}")
        detached, stack = _detach(w, src)
        roots = list(detached.roots)
        for i, chain in enumerate(roots):
            if isinstance(command, ConnectUnder):
                new_chain = _attach_under(chain, dest, stack)
            else:
                new_chain = _attach_inside(chain, dest, stack)
            if new_chain is not None:
                roots[i] = new_chain
                return Workspace(tuple(roots), w.next_id)
        raise InfeasibleCommand(f"block {dest} not found")  # unreachable

    if isinstance(command, Disconnect):
        if w.find(command.target) is None:
            raise InfeasibleCommand(f"block {command.target} not found")
        if command.target in w.root_head_ids():
            raise InfeasibleCommand(
                f"block {command.target} is already a root block")
        detached, stack = _detach(w, command.target)
        return Workspace(detached.roots + (stack,), w.next_id)

    if isinstance(command, Change):
        block = w.find(command.target)
        if block is None:
            raise InfeasibleCommand(f"block {command.target} not found")
        domain = _value_domain(block)
        if not domain:
            raise InfeasibleCommand(
                f"block {command.target} has no parameter to change")
        if block.value != command.old:
            raise InfeasibleCommand(
                f"block {command.target} holds {block.value}, not {command.old}")
        if command.new == command.old or command.new not in domain:
            raise InfeasibleCommand(f"illegal new value {command.new}")
        roots = list(w.roots)
        for i, chain in enumerate(roots):
            new_chain = _change_value(chain, command.target, command.new)
            if new_chain is not None:
                roots[i] = new_chain
                return Workspace(tuple(roots), w.next_id)
        raise InfeasibleCommand(f"block {command.target} not found")  # unreachable

    raise TypeError(f"not an edit command: {command!r}")


def enumerate_commands(w: Workspace) -> list[EditCommand]:
    """All feasible commands in `w`, in a fixed deterministic order.

    Family order is Get, Remove, ConnectUnder, ConnectInside, Disconnect,
    Change; within a family, ascending ids then ascending values.
    """
    out: list[EditCommand] = [Get(MOVE), Get(TURN), Get(REPEAT)]
    blocks = sorted(w.blocks(), key=lambda b: b.id)
    ids = [b.id for b in blocks]
    by_id = {b.id: b for b in blocks}

    out.extend(Remove(i) for i in ids)

    stacks = {i: _stack_ids(w, i) for i in ids}
    for src in ids:
        for dest in ids:
            if dest != src and dest not in stacks[src]:
                out.append(ConnectUnder(src, dest))
    for src in ids:
        for dest in ids:
            if (dest != src and dest not in stacks[src]
                    and by_id[dest].kind == REPEAT):
                out.append(ConnectInside(src, dest))

    heads = w.root_head_ids()
    out.extend(Disconnect(i) for i in ids if i not in heads)

    for b in blocks:
        for v in _value_domain(b):
            if v != b.value:
                out.append(Change(b.id, b.value, v))
    return out


def replay(commands, start: Workspace = EMPTY_WORKSPACE) -> Workspace:
    """Fold a command sequence from the empty workspace (or `start`).

    On failure, raises InfeasibleCommand with `.index` set to the position
    of the offending command.
    """
    w = start
    for i, c in enumerate(commands):
        try:
            w = apply_command(w, c)
        except InfeasibleCommand as e:
            raise InfeasibleCommand(e.reason, index=i) from None
    return w


# ---------------------------------------------------------------------------
# Textual command syntax, shared by corpus files, logs, and the service.
#
#   get <move|turn|repeat>
#   remove <id>
#   connect <id> under <id>
#   connect <id> inside <id>
#   disconnect <id>
#   change <val> in <id> to <val>
#
# Matching is case-insensitive and tolerates the filler words "a" and
# "block", so the long-hand phrasing "Connect block 2 inside block 1" parses
# to the same command as "connect 2 inside 1".

class CommandSyntaxError(ValueError):
    pass


_FILLER = {"a", "an", "block", "blocks"}


def parse_command(text: str) -> EditCommand:
    tokens = [t for t in re.split(r"\s+", text.strip().lower())
              if t and t not in _FILLER]
    if not tokens:
        raise CommandSyntaxError("empty command")

    def as_int(tok: str) -> int:
        if not re.fullmatch(r"\d+", tok):
            raise CommandSyntaxError(f"expected a number, got {tok!r}")
        return int(tok)

    head, rest = tokens[0], tokens[1:]
    if head == "get" and len(rest) == 1 and rest[0] in BLOCK_KINDS:
        return Get(rest[0])
    if head == "remove" and len(rest) == 1:
        return Remove(as_int(rest[0]))
    if head == "connect" and len(rest) == 3 and rest[1] in ("under", "inside"):
        src, dest = as_int(rest[0]), as_int(rest[2])
        if rest[1] == "under":
            return ConnectUnder(src, dest)
        return ConnectInside(src, dest)
    if head == "disconnect" and len(rest) == 1:
        return Disconnect(as_int(rest[0]))
    if head == "change" and len(rest) == 5 and rest[1] == "in" and rest[3] == "to":
        return Change(as_int(rest[2]), as_int(rest[0]), as_int(rest[4]))
    raise CommandSyntaxError(f"cannot parse command: {text!r}")


def format_command(command: EditCommand) -> str:
    if isinstance(command, Get):
        return f"get {command.kind}"
    if isinstance(command, Remove):
        return f"remove {command.target}"
    if isinstance(command, ConnectUnder):
        return f"connect {command.source} under {command.dest}"
    if isinstance(command, ConnectInside):
        return f"connect {command.source} inside {command.dest}"
    if isinstance(command, Disconnect):
        return f"disconnect {command.target}"
    if isinstance(command, Change):
        return f"change {command.old} in {command.target} to {command.new}"
    raise TypeError(f"not an edit command: {command!r}")


def parse_commands(lines) -> list[EditCommand]:
    """Parse a sequence of textual commands, skipping blanks and # comments."""
    out = []
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(parse_command(stripped))
    return out
