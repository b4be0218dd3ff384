"""Abstract method linearization and invocation inlining.

The hierarchy becomes a graph with one edge per "A implements or inherits B"
relation. Types are visited in topological order (implementers first), and
each abstract method's empty sequence is filled with the concatenated
sequences of its direct implementers' best-matching methods. Invocation
inlining then rewrites every method against that frozen table, substituting
called-method content with a recursion guard and a depth cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .descriptors import descriptor_type_tokens
from .errors import CyclicHierarchy
from .model import MethodKey, ProgramModel
from .tokens import Token, TokenSequence, extract_method_tokens

IMPLEMENTER_THRESHOLD = 0.75
INLINE_DEPTH_CAP = 16


# --- signature similarity -----------------------------------------------------

@lru_cache(maxsize=65536)
def _lcs_length(a: str, b: str) -> int:
    # Bit-parallel LCS (Allison-Dix): one integer update per character of b
    # instead of a full DP row; Python's big ints cover names of any length.
    if not a or not b:
        return 0
    masks: dict[str, int] = {}
    for index, ch in enumerate(a):
        masks[ch] = masks.get(ch, 0) | (1 << index)
    row = 0
    for ch in b:
        x = row | masks.get(ch, 0)
        row = x & ~(x - ((row << 1) | 1))
    return bin(row).count("1")


@lru_cache(maxsize=65536)
def signature_similarity(a: tuple[str, str], b: tuple[str, str]) -> float:
    """Average of name similarity and descriptor-type similarity, in [0, 1].

    Name similarity is the normalized longest-common-subsequence ratio
    2*LCS/(|a|+|b|); descriptor similarity is the Dice coefficient over the
    multiset of parameter types plus the return type.
    """
    name_a, desc_a = a
    name_b, desc_b = b
    total = len(name_a) + len(name_b)
    name_sim = 1.0 if total == 0 else 2.0 * _lcs_length(name_a, name_b) / total

    tokens_a = descriptor_type_tokens(desc_a)
    tokens_b = descriptor_type_tokens(desc_b)
    overlap = 0
    remaining = list(tokens_b)
    for item in tokens_a:
        if item in remaining:
            remaining.remove(item)
            overlap += 1
    size = len(tokens_a) + len(tokens_b)
    desc_sim = 1.0 if size == 0 else 2.0 * overlap / size

    return 0.5 * name_sim + 0.5 * desc_sim


# --- type graph ---------------------------------------------------------------

@dataclass(frozen=True)
class TypeGraph:
    """Directed hierarchy graph; edge (A, B) means A implements or inherits B."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    in_degree: dict[str, int]

    def implementers_of(self, node: str) -> list[str]:
        return [a for a, b in self.edges if b == node]


def build_type_graph(program: ProgramModel) -> TypeGraph:
    """One node per in-model type; external supertypes contribute no edges."""
    nodes = tuple(program.classes)
    edges: set[tuple[str, str]] = set()
    for cls in program.classes.values():
        for sup in cls.supertypes:
            if sup in program.classes:
                edges.add((cls.name, sup))
    in_degree = {name: 0 for name in nodes}
    for _, target in edges:
        in_degree[target] += 1
    return TypeGraph(nodes, frozenset(edges), in_degree)


def _find_cycle(graph: TypeGraph, remaining: set[str]) -> list[str]:
    predecessors: dict[str, list[str]] = {node: [] for node in remaining}
    for a, b in graph.edges:
        if a in remaining and b in remaining:
            predecessors[b].append(a)
    # Every stuck node has a stuck predecessor, so walking predecessors from
    # any start must revisit a node; the revisited span is a cycle.
    stack: list[str] = []
    seen_on_stack: dict[str, int] = {}
    node = sorted(remaining)[0]
    while node not in seen_on_stack:
        seen_on_stack[node] = len(stack)
        stack.append(node)
        node = sorted(predecessors[node])[0]
    cycle = stack[seen_on_stack[node]:]
    cycle.reverse()
    return cycle


def linearization_order(graph: TypeGraph) -> list[str]:
    """Topological order, implementers before the types they implement.

    Ties break by ascending original in-degree, then declaration order.
    """
    position = {name: i for i, name in enumerate(graph.nodes)}
    remaining_in = dict(graph.in_degree)
    successors: dict[str, list[str]] = {node: [] for node in graph.nodes}
    for a, b in graph.edges:
        successors[a].append(b)

    ready = [node for node in graph.nodes if remaining_in[node] == 0]
    order: list[str] = []
    while ready:
        ready.sort(key=lambda n: (graph.in_degree[n], position[n]))
        node = ready.pop(0)
        order.append(node)
        for succ in successors[node]:
            remaining_in[succ] -= 1
            if remaining_in[succ] == 0:
                ready.append(succ)

    if len(order) != len(graph.nodes):
        leftover = set(graph.nodes) - set(order)
        raise CyclicHierarchy(_find_cycle(graph, leftover))
    return order


# --- method table -------------------------------------------------------------

@dataclass
class MethodTable:
    """All token sequences of one program, with linearization bookkeeping."""

    sequences: dict[MethodKey, TokenSequence]
    abstract_set: frozenset[MethodKey]
    linearized_set: set[MethodKey] = field(default_factory=set)

    def read_linearized(self, key: MethodKey) -> TokenSequence:
        """Read a sequence that must already be final (order safety)."""
        if key in self.abstract_set and key not in self.linearized_set:
            raise AssertionError(
                f"order violation: {key.pretty()} read before being linearized"
            )
        return self.sequences[key]


def build_method_table(program: ProgramModel, include_synthetic: bool = True) -> MethodTable:
    """Extract every method's token sequence; abstract methods start empty."""
    sequences: dict[MethodKey, TokenSequence] = {}
    abstract: set[MethodKey] = set()
    for cls in program.classes.values():
        for method in cls.methods:
            if not include_synthetic and method.is_compiler_generated:
                continue
            key = MethodKey(cls.name, method.name, method.descriptor)
            sequences[key] = extract_method_tokens(method, cls.pool, key)
            if method.is_abstract:
                abstract.add(key)
    return MethodTable(sequences, frozenset(abstract))


# --- abstract method linearization ---------------------------------------------

def implementer_methods(
    node: str,
    abstract_key: MethodKey,
    program: ProgramModel,
    table: MethodTable,
    graph: TypeGraph,
    order_position: dict[str, int],
) -> list[TokenSequence]:
    """Best-matching method of each direct implementer, in linearization order."""
    implementers = sorted(graph.implementers_of(node), key=order_position.__getitem__)
    signature = (abstract_key.name, abstract_key.descriptor)
    chosen: list[TokenSequence] = []
    for implementer in implementers:
        best_key: Optional[MethodKey] = None
        best_score = 0.0
        for candidate in program.method_keys_of(implementer):
            if candidate not in table.sequences:
                continue
            score = signature_similarity(signature, (candidate.name, candidate.descriptor))
            if score > best_score:
                best_key, best_score = candidate, score
        if best_key is not None and best_score >= IMPLEMENTER_THRESHOLD:
            chosen.append(table.read_linearized(best_key))
    return chosen


def linearize_abstract(
    program: ProgramModel,
    table: Optional[MethodTable] = None,
    include_synthetic: bool = True,
) -> MethodTable:
    """Fill every abstract method with its implementers' concatenated content.

    Visits types in linearization order so that anything consulted is already
    final; abstract methods without implementers stay empty but still count
    as linearized.
    """
    if table is None:
        table = build_method_table(program, include_synthetic)
    graph = build_type_graph(program)
    order = linearization_order(graph)
    order_position = {name: i for i, name in enumerate(order)}

    for node in order:
        for key in program.method_keys_of(node):
            if key not in table.abstract_set or key not in table.sequences:
                continue
            parts = implementer_methods(node, key, program, table, graph, order_position)
            tokens: list[Token] = []
            for part in parts:
                tokens.extend(part.tokens)
            table.sequences[key] = TokenSequence(tuple(tokens), key)
            table.linearized_set.add(key)
    return table


# --- invocation inlining --------------------------------------------------------

def _parse_invocation(annotation: str) -> Optional[tuple[str, str, str]]:
    owner, dot, rest = annotation.partition(".")
    if not dot:
        return None
    name, colon, descriptor = rest.partition(":")
    if not colon or not name:
        return None
    return owner, name, descriptor


def resolve_invocation(
    annotation: str, program: ProgramModel, table: MethodTable
) -> Optional[MethodKey]:
    """Map an INVOKE annotation to an in-model method key, or None if external."""
    parsed = _parse_invocation(annotation)
    if parsed is None:
        return None
    owner, name, descriptor = parsed
    key = program.resolve_method(owner, name, descriptor)
    if key is None or key not in table.sequences:
        return None
    return key


def inline_invocations(
    key: MethodKey,
    table: MethodTable,
    program: ProgramModel,
    depth_cap: int = INLINE_DEPTH_CAP,
) -> TokenSequence:
    """Rewrite one method with every resolvable invocation substituted.

    All lookups go against the frozen pre-inlining table, so results do not
    depend on the order methods are rewritten in. Invocations that are
    external, already on the inlining stack (recursion), or past the depth
    cap stay as literal INVOKE tokens.
    """

    def expand(current: MethodKey, stack: frozenset[MethodKey], depth: int) -> list[Token]:
        out: list[Token] = []
        for token in table.sequences[current].tokens:
            if token.mnemonic != "INVOKE" or token.annotation is None:
                out.append(token)
                continue
            target = resolve_invocation(token.annotation, program, table)
            if target is None or target in stack or depth >= depth_cap:
                out.append(token)
                continue
            out.extend(expand(target, stack | {target}, depth + 1))
        return out

    return TokenSequence(tuple(expand(key, frozenset({key}), 0)), key)


def inline_all(
    table: MethodTable, program: ProgramModel, depth_cap: int = INLINE_DEPTH_CAP
) -> dict[MethodKey, TokenSequence]:
    """Inline every method against the same frozen table."""
    return {
        key: inline_invocations(key, table, program, depth_cap) for key in table.sequences
    }
