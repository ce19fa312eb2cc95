"""Exception hierarchy shared by every stage of the codec."""


class CodecError(Exception):
    """Base class for data/pipeline errors (CLI exit status 2)."""


class EmptyInput(CodecError, ValueError):
    pass
