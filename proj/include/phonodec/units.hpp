// Copyright 2026 The phonodec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Internal unit system: energy meV, length nm, time ps, temperature K.
// Every physical constant used by the library lives in this table.

namespace phonodec::units {

inline constexpr double kHbar = 0.6582119;             // meV ps
inline constexpr double kBoltzmann = 0.08617;          // meV / K
inline constexpr double kElectronMass = 5.686e-3;      // meV ps^2 / nm^2
// 1 kg/m^3 expressed in meV ps^2 / nm^5.
inline constexpr double kKgPerCubicMetre = 6.241509;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace phonodec::units
