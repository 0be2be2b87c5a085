class ComputeLimits:
    """
    Caps on the size of a computation

    Parameters
    ----------
    i_max : int
        last homological degree of a resolution
    j_max : int, optional
        last internal degree of a resolution; None means ``|Lambda(d,e)| + 4``
    t_max : int
        last degree of the Cauchy identity check
    max_degree : int, optional
        degree bound for Gröbner computations; None means untruncated
    max_pairs : int, optional
        S-pair budget of a single Gröbner computation; None means unlimited
    sample_cap : int
        number of sampled tuples per containment by the thm1b check
    filtration_max : int
        largest ``|lambda|`` the filtration dimension count accepts
    """

    def __init__(self, i_max=4, j_max=None, t_max=5, max_degree=None, max_pairs=None,
                 sample_cap=6, filtration_max=5):
        if i_max < 0:
            raise ValueError("The value of 'i_max' parameter can't be negative")
        if j_max is not None and j_max < 0:
            raise ValueError("The value of 'j_max' parameter can't be negative")
        if t_max < 0:
            raise ValueError("The value of 't_max' parameter can't be negative")
        if max_degree is not None and max_degree < 0:
            raise ValueError("The value of 'max_degree' parameter can't be negative")
        if max_pairs is not None and max_pairs < 1:
            raise ValueError("The value of 'max_pairs' parameter can't be lower than 1")
        if sample_cap < 1:
            raise ValueError("The value of 'sample_cap' parameter can't be lower than 1")
        if filtration_max < 0:
            raise ValueError("The value of 'filtration_max' parameter can't be negative")

        self._i_max = i_max
        self._j_max = j_max
        self._t_max = t_max
        self._max_degree = max_degree
        self._max_pairs = max_pairs
        self._sample_cap = sample_cap
        self._filtration_max = filtration_max

    @property
    def i_max(self):
        return self._i_max

    @property
    def j_max(self):
        return self._j_max

    @property
    def t_max(self):
        return self._t_max

    @property
    def max_degree(self):
        return self._max_degree

    @property
    def max_pairs(self):
        return self._max_pairs

    @property
    def sample_cap(self):
        return self._sample_cap

    @property
    def filtration_max(self):
        return self._filtration_max

    def j_max_for(self, d, e):
        """The internal degree cap for an instance, filling in the default."""
        if self._j_max is not None:
            return self._j_max
        return (d + 1) * e + d + 4

    def get_dict(self):
        """

        Returns
        -------
        Dict:
            Dictionary of the caps, as stored in experiment records.
        """
        return {
            "i_max": self._i_max,
            "j_max": self._j_max,
            "t_max": self._t_max,
            "max_degree": self._max_degree,
            "max_pairs": self._max_pairs,
            "sample_cap": self._sample_cap,
            "filtration_max": self._filtration_max,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: v for k, v in data.items() if k in cls().get_dict()})

    @classmethod
    def from_args(cls, args):
        """Limits from parsed command line flags; flags missing on ``args`` keep their defaults."""
        values = {}
        for name in cls().get_dict():
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        return cls(**values)

    def __eq__(self, other):
        return isinstance(other, ComputeLimits) and self.get_dict() == other.get_dict()

    def __repr__(self):
        return "ComputeLimits(%s)" % ", ".join("%s=%r" % kv for kv in self.get_dict().items())
