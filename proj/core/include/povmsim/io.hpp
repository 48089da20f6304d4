// Copyright 2026 the povmsim authors
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

#include <string>

#include <json.hpp>

#include "povmsim/codebook.hpp"
#include "povmsim/states.hpp"

namespace povmsim {

using json = nlohmann::json;

// JSON exchange formats. Matrices are {"dim": d, "re": [[...]], "im":
// [[...]]} row-major; "im" may be omitted for real matrices. Schema
// violations throw SchemaError carrying a JSON-pointer-style path.

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& path = "/");

json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j, const std::string& path = "/");

json density_to_json(const DensityOperator& s);
DensityOperator density_from_json(const json& j, const std::string& path = "/");

json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j, const std::string& path = "/");

json channel_to_json(const ClassicalChannel& c);
ClassicalChannel channel_from_json(const json& j, const std::string& path = "/");

json pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const json& j, const std::string& path = "/");

json coset_codebook_to_json(const CosetCode& code, const CosetExponents& exps, int n);
json iid_codebook_to_json(const Codebook2D& cb);

/// Shortest round-trip decimal rendering (the CSV number format).
std::string format_double(double v);

}  // namespace povmsim
