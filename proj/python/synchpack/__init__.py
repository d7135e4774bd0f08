"""Scheduling of synchronized multi-task jobs with packing constraints.

Instances and schedules are plain dicts in the same JSON layout the command line tool reads and
writes. Rational quantities are returned as strings such as "7/2"; use fractions.Fraction to do
exact arithmetic on them.
"""

import json
from fractions import Fraction

from . import _synchpack
from ._synchpack import InstanceError, PreconditionError

__all__ = [
    "InstanceError",
    "PreconditionError",
    "algorithm_names",
    "greedy_pack_interval",
    "lower_bound",
    "optimum",
    "run_online",
    "solve",
    "synth_instance",
    "validate",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _text(value):
    return str(value)


def algorithm_names():
    return list(_synchpack.algorithm_names())


def solve(instance, algorithm, epsilon="1/2", seed=None, alpha="2", compact=True):
    """Run a named algorithm. Returns {"stats", "schedule", "valid"}."""
    return json.loads(
        _synchpack.solve(_dump(instance), algorithm, _text(epsilon), seed, _text(alpha), compact)
    )


def validate(instance, schedule):
    """Validation report; includes the objective when the schedule is valid."""
    return json.loads(_synchpack.validate(_dump(instance), _dump(schedule)))


def lower_bound(instance, relaxation="lp1", epsilon="1/2"):
    """Optimal value of a relaxation as a Fraction."""
    return Fraction(_synchpack.lower_bound(_dump(instance), relaxation, _text(epsilon)))


def optimum(instance, mode="non-preemptive", horizon=10):
    """Exact optimum of a tiny instance in the given schedule class."""
    return json.loads(_synchpack.optimum(_dump(instance), mode, horizon))


def run_online(instance, algorithm="sp3", preemptive=True, tau0="300", gamma="0", beta="0"):
    return json.loads(
        _synchpack.run_online(
            _dump(instance), algorithm, preemptive, _text(tau0), _text(gamma), _text(beta)
        )
    )


def synth_instance(**params):
    """Seeded synthetic instance; keyword arguments mirror the generator flags of the CLI."""
    return json.loads(_synchpack.synth_instance(**params))


def greedy_pack_interval(items, capacity=1, start=0):
    """Start times (as Fractions) of (size, duration) items packed greedily from `start`."""
    pairs = [(_text(size), _text(duration)) for size, duration in items]
    return [Fraction(s) for s in _synchpack.greedy_pack_interval(pairs, _text(capacity), _text(start))]
