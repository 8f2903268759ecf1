#pragma once

namespace twmo {

/// Selects between the OpenMP kernel and the serial reference path.
enum class Exec { Serial, Parallel };

}  // namespace twmo
