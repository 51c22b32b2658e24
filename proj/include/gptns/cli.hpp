// Copyright 2026 The gptns Authors
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


#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gptns/decompose.hpp"
#include "gptns/theories.hpp"
#include "json.hpp"

namespace gptns::cli {

inline constexpr int kFormatVersion = 1;
inline constexpr double kDefaultTol = 1e-7;

enum ExitCode : int { kOk = 0, kDomainError = 1, kMalformedInput = 2 };

struct PartyTheories {
    std::string in_theory;
    std::string out_theory;

    friend bool operator==(const PartyTheories &, const PartyTheories &) = default;
};

struct ChannelFile {
    int format_version = kFormatVersion;
    std::vector<PartyTheories> parties;
    RealMatrix matrix;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

struct MixtureFileTerm {
    double weight = 0.0;
    std::vector<RealMatrix> factors;
    std::vector<std::size_t> functions;
};

struct MixtureFile {
    int format_version = kFormatVersion;
    std::string frame_id;
    std::vector<PartyTheories> parties;
    std::string mode;
    std::string algorithm;
    std::string objective;
    std::vector<MixtureFileTerm> terms;
    double negativity = 0.0;
    double residual = 0.0;
    double l1 = 0.0;
    double dropped_mass = 0.0;
};

/// Parsing throws MalformedInput for anything structurally wrong, including
/// matrices whose shape disagrees with the declared theories.
ChannelFile parse_channel(const std::string &text);
std::string dump_channel(const ChannelFile &file);
MixtureFile parse_mixture(const std::string &text);
std::string dump_mixture(const MixtureFile &file);

/// A channel with one party per entry of `parties`, party k owning input and
/// output wire k.
struct LoadedChannel {
    PartitionedMap map;
    std::vector<FiducialFrame> frames_in;
    std::vector<FiducialFrame> frames_out;
};
LoadedChannel load_channel(const ChannelFile &file);

MixtureFile mixture_file(const QuasiMixture &m, const std::vector<PartyTheories> &parties,
                         const DecomposeOptions &options);
QuasiMixture load_mixture(const MixtureFile &file);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

/// Runs one command line (without the program name). Reports go to `out`,
/// error names and messages to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gptns::cli
