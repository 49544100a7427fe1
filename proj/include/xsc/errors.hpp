#pragma once

#include <stdexcept>

namespace xsc {

struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IncompleteKrausSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace xsc
