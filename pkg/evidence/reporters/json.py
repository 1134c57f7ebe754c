import json as _json
import math as _math

import numpy as _np

import evidence as _evidence

SIGNIFICANT_DIGITS = 12


def round_significant(value, digits=SIGNIFICANT_DIGITS):
    """Recursively round floats to ``digits`` significant digits; non-finite floats become strings."""
    if hasattr(value, 'to_json'):
        value = value.to_json()
    if isinstance(value, (bool, _np.bool_)):
        return bool(value)
    if isinstance(value, (int, _np.integer)):
        return int(value)
    if isinstance(value, (float, _np.floating)):
        value = float(value)
        if not _math.isfinite(value):
            return repr(value)
        return float('{:.{}g}'.format(value, digits))
    if isinstance(value, dict):
        return {str(k): round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, _np.ndarray)):
        return [round_significant(v, digits) for v in value]
    return value


class JSONReporter(_evidence.Reporter):
    def __init__(self, output):
        self.output = output
    def on_completion(self, data):
        _json.dump(round_significant(data), self.output, indent=2, default=repr)
        self.output.write('\n')
