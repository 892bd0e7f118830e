"""Small helpers shared by the test modules."""


def make_scripted_scorer(entries):
    """NliScorer over inline scripted triples."""
    from fizz.backends import ScriptedNliBackend
    from fizz.nli import NliScorer

    return NliScorer(ScriptedNliBackend.from_entries(entries))
