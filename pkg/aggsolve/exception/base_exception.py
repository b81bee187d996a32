import logging
import traceback


class BaseException(Exception):
    """Root of every aggsolve error. The message is logged at error level where it is raised.

    Keyword arguments are kept on ``context`` so that callers can recover
    diagnostic payloads (best iterate, residual gap, parse position, ...).
    """

    def __init__(self, *args, **context):
        super().__init__(*args)
        self.context = context

        stack = traceback.extract_stack()
        logger = logging.getLogger(stack[-2].filename)
        logger.error(self.__str__(), stacklevel=2)
