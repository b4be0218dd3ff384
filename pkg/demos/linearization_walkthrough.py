#!/usr/bin/env python3
"""Walk through abstract-method linearization on the committed hierarchy fixture.

The fixture holds two abstract classes, two interfaces, and five concrete
classes. This script prints the hierarchy edges, the topological processing
order, and then shows how each abstract method's body is assembled from its
implementers' token sequences.

Run from the repository root:  python3 demos/linearization_walkthrough.py
"""

from pathlib import Path

from lowdup import (
    MethodKey,
    build_type_graph,
    linearization_order,
    linearize_abstract,
    load_fixture,
)

FIXTURE = Path(__file__).resolve().parent.parent / "tests/data/fixtures/fig1.json"


def tokens_of(table, cls, name, descriptor):
    return [t.render() for t in table.sequences[MethodKey(cls, name, descriptor)].tokens]


def show(title):
    print()
    print(title)
    print("-" * len(title))


def main() -> None:
    model = load_fixture(FIXTURE.read_text(encoding="utf-8"))

    show("Hierarchy edges (implementer -> abstract-bearing type)")
    graph = build_type_graph(model)
    for src, dst in sorted(graph.edges):
        print(f"  {src:15s} -> {dst}")

    show("Topological processing order (implementers first)")
    order = linearization_order(graph)
    for position, node in enumerate(order, start=1):
        kind = model.classes[node].kind.value
        print(f"  {position}. {node} ({kind})")

    show("Linearized abstract-method bodies")
    table = linearize_abstract(model)
    cases = [
        ("Interface2", "foo3", "(I)I", "only implementer is ConcreteClass5"),
        ("AbstractClass2", "foo1", "()V", "ConcreteClass2 ++ ConcreteClass3"),
        ("Interface1", "foo3", "(I)I", "ConcreteClass4 ++ linearized Interface2"),
        ("AbstractClass1", "foo1", "()V", "ConcreteClass1 ++ linearized AbstractClass2"),
    ]
    for cls, name, descriptor, origin in cases:
        body = tokens_of(table, cls, name, descriptor)
        print(f"  {cls}.{name}:{descriptor}  <- {origin}")
        for token in body:
            print(f"      {token}")

    show("Why the order matters")
    print("  Interface1.foo3 embeds Interface2's already-linearized body, and")
    print("  AbstractClass1.foo1 embeds AbstractClass2's; processing a type")
    print("  before its abstract dependencies would concatenate empty stubs.")
    ac1 = tokens_of(table, "AbstractClass1", "foo1", "()V")
    cc1 = tokens_of(table, "ConcreteClass1", "foo1", "()V")
    cc2 = tokens_of(table, "ConcreteClass2", "foo1", "()V")
    cc3 = tokens_of(table, "ConcreteClass3", "foo1", "()V")
    assert ac1 == cc1 + cc2 + cc3
    print("  Check: AbstractClass1.foo1 == CC1 ++ CC2 ++ CC3  (verified)")


if __name__ == "__main__":
    main()
