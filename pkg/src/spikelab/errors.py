"""Exception hierarchy for spikelab."""


class SpikelabError(Exception):
    """Base class for all library errors."""


class InvalidMatroid(SpikelabError):
    pass


class ElementOutOfRange(InvalidMatroid):
    pass


class EmptyCircuit(InvalidMatroid):
    pass


class GroundSetTooLarge(SpikelabError):
    pass


class GroundSetTooLargeForExhaustiveScan(GroundSetTooLarge):
    pass


class GroundSetTooLargeForIsomorphism(GroundSetTooLarge):
    pass


class GroundSetTooLargeForSearch(GroundSetTooLarge):
    pass


class OverlappingSets(SpikelabError):
    pass


class InvalidParameters(SpikelabError):
    pass


class NotAModularCut(SpikelabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RankZero(SpikelabError):
    pass


class CorankZero(SpikelabError):
    pass


class OrderTooSmall(SpikelabError):
    pass


class OddGroundSet(SpikelabError):
    pass


class PartitionDoesNotCoverGroundSet(SpikelabError):
    pass


class PreconditionViolated(SpikelabError):
    pass


class ExtensionFailed(SpikelabError):
    pass


class NotACircuit(SpikelabError):
    pass


class StructureViolation(SpikelabError):
    pass


class NotASpike(SpikelabError):
    pass


class NotAnEchidna(SpikelabError):
    pass


class VerificationFailed(SpikelabError):
    pass


class Insufficient(SpikelabError):
    pass


class NotFound(SpikelabError):
    pass
