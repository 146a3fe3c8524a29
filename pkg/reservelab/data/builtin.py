"""
The instances worked through by hand in the literature on the Indian
reservation system, registered under short names.
"""
from fvcore.common.registry import Registry

from reservelab.model import Individual, Instance, validate_instance
from reservelab.policies import PolicySpec

INSTANCE_REGISTRY = Registry("INSTANCE")
INSTANCE_REGISTRY.__doc__ = """
Registry for builtin instances. The registered object is called with no
arguments and returns a validated `Instance`.
"""


def _roster(rows):
    return [Individual.create(iid, cat, score) for iid, cat, score in rows]


@INSTANCE_REGISTRY.register()
def example1():
    # four seats, one each for SC, ST and OBC, one open
    rows = [
        ("i1", "g", 100),
        ("i2", "SC", 99),
        ("i3", "ST", 98),
        ("i4", "g", 98),
        ("i5", "OBC", 89),
    ]
    return validate_instance(
        Instance.create(_roster(rows), capacity=4, reserved={"SC": 1, "ST": 1, "OBC": 1},
                        policy=PolicySpec.elevated(10))
    )


@INSTANCE_REGISTRY.register()
def example2():
    # five seats: SC 1, ST 1, OBC 2, open 1
    rows = [
        ("i1", "g", 100),
        ("i2", "SC", 99),
        ("i3", "ST", 98),
        ("i4", "OBC", 91),
        ("i5", "OBC", 90),
        ("i6", "g", 98),
    ]
    return validate_instance(
        Instance.create(_roster(rows), capacity=5, reserved={"SC": 1, "ST": 1, "OBC": 2},
                        policy=PolicySpec.gap(PolicySpec.elevated(10), 10))
    )


@INSTANCE_REGISTRY.register()
def example2_arrival():
    # example2 after a general category applicant scoring 102 arrives
    inst = example2()
    return validate_instance(
        inst.replace(individuals=inst.individuals + (Individual.create("i7", "g", 102),))
    )


@INSTANCE_REGISTRY.register()
def empty():
    # no policy: one must be given on the command line
    return validate_instance(
        Instance.create([], capacity=4, reserved={"SC": 1, "ST": 1, "OBC": 1})
    )


def builtin_instance(name: str) -> Instance:
    return INSTANCE_REGISTRY.get(name)()
