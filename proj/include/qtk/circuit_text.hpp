#pragma once

#include <string>

#include "qtk/circuit.hpp"

namespace qtk {

std::string serialize(const Circuit& c);

// Without a `circuit <width>` header the width is inferred from the largest wire.
Circuit deserialize(const std::string& text);

}  // namespace qtk
