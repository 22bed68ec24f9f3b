#pragma once

#include <stdexcept>
#include <string>

namespace sysrisk {

// Base class for every data and domain error raised by the library. The CLI
// maps these to exit code 1; any other exception is an internal failure
// (exit code 2).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// what() is prefixed with the error name so a single-line CLI diagnostic
// identifies the failure class, the stage, and the offending record.
#define SYSRISK_DEFINE_ERROR(Name)                                           \
    struct Name : Error {                                                    \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}   \
    }

// ingest
SYSRISK_DEFINE_ERROR(MalformedRow);
SYSRISK_DEFINE_ERROR(DuplicateTimestamp);
SYSRISK_DEFINE_ERROR(NonMonotonicDates);
SYSRISK_DEFINE_ERROR(FewerThanTwoAssets);
SYSRISK_DEFINE_ERROR(GapError);
SYSRISK_DEFINE_ERROR(AllAssetsDropped);
SYSRISK_DEFINE_ERROR(LeadingMissing);

// returns
SYSRISK_DEFINE_ERROR(NonPositiveLevel);

// spectra
SYSRISK_DEFINE_ERROR(ZeroVariance);
SYSRISK_DEFINE_ERROR(WindowOutOfRange);
SYSRISK_DEFINE_ERROR(NoConvergence);

// cars
SYSRISK_DEFINE_ERROR(SeriesTooShort);
SYSRISK_DEFINE_ERROR(InvalidWindow);

// signal
SYSRISK_DEFINE_ERROR(ConstantSeries);
SYSRISK_DEFINE_ERROR(MisalignedInputs);
SYSRISK_DEFINE_ERROR(LagTooLarge);
SYSRISK_DEFINE_ERROR(SplitOutOfRange);

// synth
SYSRISK_DEFINE_ERROR(InvalidSpec);

// cli
SYSRISK_DEFINE_ERROR(NoCommonTimestamps);

#undef SYSRISK_DEFINE_ERROR

}  // namespace sysrisk
