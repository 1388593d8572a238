// Copyright 2026 The qrd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRD_QRD_HPP
#define QRD_QRD_HPP

#include "qrd/bounds.hpp"
#include "qrd/distortion.hpp"
#include "qrd/entropies.hpp"
#include "qrd/io.hpp"
#include "qrd/isotropic.hpp"
#include "qrd/linalg.hpp"
#include "qrd/protocol.hpp"
#include "qrd/quantum.hpp"
#include "qrd/random.hpp"
#include "qrd/rate_distortion.hpp"
#include "qrd/sdp.hpp"
#include "qrd/systems.hpp"
#include "qrd/validation.hpp"

namespace qrd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qrd

#endif  // QRD_QRD_HPP
