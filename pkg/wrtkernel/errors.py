"""Exceptions raised by wrtkernel."""


class WrtKernelError(Exception):
    pass


class FalsificationError(WrtKernelError):
    """A divisibility or identity that is claimed to hold failed.

    Raised only by the checking operations; everything else signals
    plain failures through return values or ordinary errors.
    """

    def __init__(self, message: str, instance=None) -> None:
        super().__init__(message)
        self.instance = instance


class NotDivisibleError(WrtKernelError, ArithmeticError):
    pass


class RootSpecError(WrtKernelError, ValueError):
    pass


class DegenerateRootError(RootSpecError):
    pass


class PresentationError(WrtKernelError, ValueError):
    pass


class SchemaError(WrtKernelError, ValueError):
    pass


class SizeBoundError(WrtKernelError, ValueError):
    pass
