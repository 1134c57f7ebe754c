class EvidenceError(Exception):
    exit_code = 1


class UsageError(EvidenceError):
    exit_code = 2


class RegionError(UsageError):
    pass


class RegionSyntaxError(RegionError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__('{} at column {}: {}'.format(message, position, text))


class UnknownParameterError(RegionError):
    def __init__(self, name, known):
        self.name = name
        self.known = tuple(known)
        super().__init__('unknown parameter {!r} (expected one of {})'.format(
            name, ', '.join(self.known)))


class EmptyRegionError(RegionError):
    pass


class NumericError(EvidenceError):
    exit_code = 3


class OptimizationError(NumericError):
    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class BracketError(NumericError):
    def __init__(self, a, b, ga, gb):
        self.bracket = (a, b)
        self.values = (ga, gb)
        super().__init__(
            'bracket [{}, {}] does not straddle a sign change (g = {}, {})'.format(a, b, ga, gb))


class SimulationError(NumericError):
    def __init__(self, failed, total, tracebacks=()):
        self.failed = failed
        self.total = total
        self.tracebacks = list(tracebacks)
        super().__init__('{}/{} replications failed'.format(failed, total))
