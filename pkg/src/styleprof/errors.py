"""Exception hierarchy shared across the toolkit."""


class StyleprofError(Exception):
    """Base class for all toolkit errors."""


class IoError(StyleprofError):
    pass


class LineCountMismatch(StyleprofError):
    pass


class EmptySplit(StyleprofError):
    pass


class MissingTrainSplit(StyleprofError):
    pass


class ConfigError(StyleprofError):
    pass


class EmptySentence(StyleprofError):
    pass


class ModelNotLoaded(StyleprofError):
    pass


class UnknownTag(StyleprofError):
    pass


class MalformedConllu(StyleprofError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NonAlphabetic(StyleprofError):
    pass


class NoWords(StyleprofError):
    pass


class LexiconNotLoaded(StyleprofError):
    pass


class TagsUnavailable(StyleprofError):
    pass


class SingleClass(StyleprofError):
    pass


class SchemaMismatch(StyleprofError):
    pass


class SupportMismatch(StyleprofError):
    pass


class LengthMismatch(StyleprofError):
    pass


class EmptyCorpus(StyleprofError):
    pass
