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


#include "gptns/cli.hpp"

#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gptns/error.hpp"

namespace gptns::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string &what) {
    throw Error(ErrorKind::MalformedInput, what);
}

const Json &field(const Json &obj, const char *key) {
    if (!obj.is_object() || !obj.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

double number(const Json &j, const char *what) {
    if (!j.is_number()) {
        malformed(std::string(what) + " must be a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        malformed(std::string(what) + " must be finite");
    }
    return v;
}

std::string text(const Json &j, const char *what) {
    if (!j.is_string()) {
        malformed(std::string(what) + " must be a string");
    }
    return j.get<std::string>();
}

Json matrix_json(const RealMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (double v : m.row_span(r)) {
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

RealMatrix matrix_from(const Json &j) {
    if (!j.is_array() || j.empty()) {
        malformed("matrix must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) {
        malformed("matrix rows must be non-empty arrays");
    }
    std::vector<double> entries;
    entries.reserve(rows * cols);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != cols) {
            malformed("matrix rows must all have the same length");
        }
        for (const auto &v : row) {
            entries.push_back(number(v, "matrix entry"));
        }
    }
    return RealMatrix(rows, cols, std::move(entries));
}

Json parties_json(const std::vector<PartyTheories> &parties) {
    Json arr = Json::array();
    for (const auto &p : parties) {
        arr.push_back(Json{{"in_theory", p.in_theory}, {"out_theory", p.out_theory}});
    }
    return arr;
}

std::vector<PartyTheories> parties_from(const Json &j) {
    if (!j.is_array() || j.empty()) {
        malformed("parties must be a non-empty array");
    }
    std::vector<PartyTheories> out;
    for (const auto &p : j) {
        out.push_back(PartyTheories{text(field(p, "in_theory"), "in_theory"), text(field(p, "out_theory"), "out_theory")});
    }
    return out;
}

Json parse_json(const std::string &s) {
    try {
        return Json::parse(s);
    } catch (const Json::exception &e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

void check_version(const Json &j) {
    const auto &v = field(j, "format_version");
    if (!v.is_number_integer() || v.get<long long>() != kFormatVersion) {
        malformed("unsupported format_version (expected 1)");
    }
}

struct PartySystems {
    std::vector<TheorySpec> in;
    std::vector<TheorySpec> out;
};

PartySystems theories_for(const std::vector<PartyTheories> &parties) {
    PartySystems s;
    for (const auto &p : parties) {
        s.in.push_back(parse_theory_id(p.in_theory));
        s.out.push_back(parse_theory_id(p.out_theory));
    }
    return s;
}

std::string num(double x) {
    if (x == 0.0) {
        x = 0.0;  // no "-0"
    }
    return fmt::format("{:.10g}", x);
}

void print_matrix(std::ostream &out, const RealMatrix &m, const std::string &indent = "  ") {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << indent << "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c == 0 ? "" : ", ") << num(m(r, c));
        }
        out << "]\n";
    }
}

std::string yes_no(bool b) {
    return b ? "yes" : "no";
}

Objective parse_objective(const std::string &s) {
    return s == "min-negativity" ? Objective::MinNegativity : Objective::Feasible;
}

std::string objective_name(Objective o) {
    return o == Objective::MinNegativity ? "min-negativity" : "feasible";
}

int cmd_theory_show(const std::string &id, std::ostream &out) {
    TheorySpec t = parse_theory_id(id);
    auto h = hopping_metric(t.frame);
    auto report = validate_frame(t.frame);
    out << "theory: " << t.id << "\n";
    out << "dim: " << t.system.dim << "\n";
    out << "discard: [";
    for (std::size_t k = 0; k < t.system.discard.size(); ++k) {
        out << (k == 0 ? "" : ", ") << num(t.system.discard[k]);
    }
    out << "]\n";
    out << "cones: " << (t.system.state_cone.polyhedral() ? "polyhedral" : "positive semidefinite") << "\n";
    out << "frame: " << t.frame.name << "\n";
    out << "fiducial states (columns):\n";
    print_matrix(out, t.frame.prep);
    out << "fiducial effects (rows):\n";
    print_matrix(out, t.frame.meas);
    out << "hopping metric:\n";
    print_matrix(out, h.h);
    out << "inverse hopping metric:\n";
    print_matrix(out, h.h_inv);
    for (const auto &c : report.checks) {
        out << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (slack " << num(c.slack) << ")\n";
    }
    out << "frame valid: " << yes_no(report.all_passed()) << "\n";
    return report.all_passed() ? kOk : kDomainError;
}

int cmd_check(const std::string &path, double tol, std::ostream &out, std::ostream &err) {
    ChannelFile file = parse_channel(read_file(path));
    LoadedChannel ch = load_channel(file);
    out << "parties: " << file.parties.size() << "\n";
    for (std::size_t i = 0; i < file.parties.size(); ++i) {
        out << "  party " << i << ": " << file.parties[i].in_theory << " -> " << file.parties[i].out_theory << "\n";
    }
    bool dp = is_discard_preserving(ch.map, std::max(tol, kAlgebraicTol));
    out << "discard-preserving: " << yes_no(dp) << "\n";
    if (!dp) {
        err << error_name(ErrorKind::NotDiscardPreserving) << ": channel does not preserve the discard effect\n";
        return kDomainError;
    }
    auto report = ns_report_channel(ch.map, ch.frames_in, ch.frames_out, tol);
    for (std::size_t i = 0; i < report.per_party_violation.size(); ++i) {
        out << "party " << i << " violation: " << num(report.per_party_violation[i]) << "\n";
    }
    out << "tolerance: " << num(tol) << "\n";
    out << "non-signalling: " << yes_no(report.is_ns) << "\n";
    if (!report.is_ns) {
        err << error_name(ErrorKind::NotNonSignalling) << ": largest violation " << num(report.max_violation()) << "\n";
        return kDomainError;
    }
    return kOk;
}

void print_mixture_summary(std::ostream &out, const QuasiMixture &m) {
    double total = 0.0;
    for (const auto &t : m.terms) {
        total += t.weight;
    }
    out << "terms: " << m.terms.size() << "\n";
    out << "sum of weights: " << num(total) << "\n";
    out << "negativity: " << num(m.negativity) << "\n";
    out << "sum |w|: " << num(m.l1) << "\n";
    out << "residual: " << num(m.residual) << "\n";
    out << "dropped mass: " << num(m.dropped_mass) << "\n";
    out << "frame: " << m.frame_id << "\n";
}

int cmd_decompose(const std::string &path, const DecomposeOptions &options, const std::string &out_path,
                  std::ostream &out) {
    ChannelFile file = parse_channel(read_file(path));
    LoadedChannel ch = load_channel(file);
    QuasiMixture m = decompose_ns_channel(ch.map, ch.frames_in, ch.frames_out, options);
    write_file(out_path, dump_mixture(mixture_file(m, file.parties, options)));
    print_mixture_summary(out, m);
    out << "wrote " << out_path << "\n";
    return kOk;
}

int cmd_reconstruct(const std::string &mix_path, const std::string &channel_path, const std::string &out_path,
                    std::ostream &out) {
    MixtureFile mf = parse_mixture(read_file(mix_path));
    QuasiMixture m = load_mixture(mf);
    PartitionedMap rec = reconstruct(m);
    double total = 0.0;
    for (const auto &t : m.terms) {
        total += t.weight;
    }
    out << "terms: " << m.terms.size() << "\n";
    out << "sum of weights: " << num(total) << "\n";
    if (!channel_path.empty()) {
        LoadedChannel ch = load_channel(parse_channel(read_file(channel_path)));
        const RealMatrix &target = ch.map.grouped_by_party().matrix();
        if (target.rows() != rec.matrix().rows() || target.cols() != rec.matrix().cols()) {
            throw Error(ErrorKind::ShapeMismatch, "mixture and channel have different shapes");
        }
        out << "residual: " << num(std::max(max_abs_diff(target, rec.matrix()), std::abs(total - 1.0))) << "\n";
    }
    if (!out_path.empty()) {
        ChannelFile cf;
        cf.parties = mf.parties;
        cf.matrix = rec.matrix();
        cf.metadata["source"] = "reconstruct";
        cf.metadata["frame_id"] = mf.frame_id;
        write_file(out_path, dump_channel(cf));
        out << "wrote " << out_path << "\n";
    }
    return kOk;
}

int cmd_negativity(const std::string &mix_path, std::ostream &out) {
    MixtureFile mf = parse_mixture(read_file(mix_path));
    Vector w;
    double l1 = 0.0;
    for (const auto &t : mf.terms) {
        w.push_back(t.weight);
        l1 += std::abs(t.weight);
    }
    double neg = negativity(w);
    out << "terms: " << w.size() << "\n";
    out << "negativity: " << num(neg) << "\n";
    out << "sum |w|: " << num(l1) << "\n";
    return kOk;
}

int cmd_random_ns(const std::string &ids, std::uint64_t seed, double mix, bool signalling,
                  const std::string &out_path, std::ostream &out) {
    if (!(mix >= 0.0 && mix <= 1.0)) {
        malformed("--mix must lie in [0, 1]");
    }
    auto theories = parse_theory_list(ids);
    PartitionedMap c = signalling ? random_signalling_channel(theories, seed, mix) : random_ns_channel(theories, seed, mix);
    ChannelFile cf;
    for (const auto &t : theories) {
        cf.parties.push_back(PartyTheories{t.id, t.id});
    }
    cf.matrix = c.matrix();
    cf.metadata["generator"] = signalling ? "random-signalling" : "random-ns";
    cf.metadata["seed"] = seed;
    cf.metadata["mix"] = mix;
    write_file(out_path, dump_channel(cf));
    out << "parties: " << theories.size() << "\n";
    out << "matrix: " << c.matrix().rows() << " x " << c.matrix().cols() << "\n";
    out << "wrote " << out_path << "\n";
    return kOk;
}

}  // namespace

ChannelFile parse_channel(const std::string &s) {
    Json j = parse_json(s);
    check_version(j);
    ChannelFile f;
    f.parties = parties_from(field(j, "parties"));
    f.matrix = matrix_from(field(j, "matrix"));
    if (j.contains("metadata")) {
        if (!j.at("metadata").is_object()) {
            malformed("metadata must be an object");
        }
        f.metadata = j.at("metadata");
    }
    load_channel(f);
    return f;
}

std::string dump_channel(const ChannelFile &f) {
    Json j;
    j["format_version"] = f.format_version;
    j["parties"] = parties_json(f.parties);
    j["matrix"] = matrix_json(f.matrix);
    j["metadata"] = f.metadata;
    return j.dump(2) + "\n";
}

MixtureFile parse_mixture(const std::string &s) {
    Json j = parse_json(s);
    check_version(j);
    MixtureFile f;
    f.frame_id = text(field(j, "frame_id"), "frame_id");
    f.parties = parties_from(field(j, "parties"));
    f.mode = j.contains("mode") ? text(j.at("mode"), "mode") : "channels";
    f.algorithm = j.contains("algorithm") ? text(j.at("algorithm"), "algorithm") : "pipeline";
    f.objective = j.contains("objective") ? text(j.at("objective"), "objective") : "feasible";
    f.negativity = number(field(j, "negativity"), "negativity");
    f.residual = number(field(j, "residual"), "residual");
    f.l1 = j.contains("l1") ? number(j.at("l1"), "l1") : 0.0;
    f.dropped_mass = j.contains("dropped_mass") ? number(j.at("dropped_mass"), "dropped_mass") : 0.0;
    const auto &terms = field(j, "terms");
    if (!terms.is_array()) {
        malformed("terms must be an array");
    }
    for (const auto &t : terms) {
        MixtureFileTerm term;
        term.weight = number(field(t, "weight"), "weight");
        const auto &factors = field(t, "factors");
        if (!factors.is_array() || factors.size() != f.parties.size()) {
            malformed("each term needs one factor per party");
        }
        for (const auto &m : factors) {
            term.factors.push_back(matrix_from(m));
        }
        if (t.contains("functions")) {
            const auto &fs = t.at("functions");
            if (!fs.is_array()) {
                malformed("functions must be an array");
            }
            for (const auto &v : fs) {
                if (!v.is_number_unsigned()) {
                    malformed("function indices must be non-negative integers");
                }
                term.functions.push_back(v.get<std::size_t>());
            }
        }
        f.terms.push_back(std::move(term));
    }
    return f;
}

std::string dump_mixture(const MixtureFile &f) {
    Json j;
    j["format_version"] = f.format_version;
    j["frame_id"] = f.frame_id;
    j["parties"] = parties_json(f.parties);
    j["mode"] = f.mode;
    j["algorithm"] = f.algorithm;
    j["objective"] = f.objective;
    j["negativity"] = f.negativity;
    j["residual"] = f.residual;
    j["l1"] = f.l1;
    j["dropped_mass"] = f.dropped_mass;
    Json terms = Json::array();
    for (const auto &t : f.terms) {
        Json factors = Json::array();
        for (const auto &m : t.factors) {
            factors.push_back(matrix_json(m));
        }
        terms.push_back(Json{{"weight", t.weight}, {"functions", t.functions}, {"factors", std::move(factors)}});
    }
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

LoadedChannel load_channel(const ChannelFile &file) {
    auto th = theories_for(file.parties);
    std::vector<GptSystem> ins;
    std::vector<GptSystem> outs;
    std::size_t rows = 1;
    std::size_t cols = 1;
    for (std::size_t i = 0; i < th.in.size(); ++i) {
        ins.push_back(th.in[i].system);
        outs.push_back(th.out[i].system);
        rows *= th.out[i].system.dim;
        cols *= th.in[i].system.dim;
    }
    if (file.matrix.rows() != rows || file.matrix.cols() != cols) {
        malformed(fmt::format("matrix is {} x {} but the parties require {} x {}", file.matrix.rows(),
                              file.matrix.cols(), rows, cols));
    }
    PartitionedMap map(std::move(ins), std::move(outs), file.matrix, default_parties(th.in.size(), th.in.size()));
    return LoadedChannel{std::move(map), frames_of(th.in), frames_of(th.out)};
}

MixtureFile mixture_file(const QuasiMixture &m, const std::vector<PartyTheories> &parties,
                         const DecomposeOptions &options) {
    MixtureFile f;
    f.frame_id = m.frame_id;
    f.parties = parties;
    f.mode = options.mode == DecomposeMode::DpFactors ? "dp" : "channels";
    f.algorithm = options.algorithm == Algorithm::Direct ? "direct" : "pipeline";
    f.objective = objective_name(options.objective);
    f.negativity = m.negativity;
    f.residual = m.residual;
    f.l1 = m.l1;
    f.dropped_mass = m.dropped_mass;
    for (const auto &t : m.terms) {
        MixtureFileTerm term{t.weight, {}, t.functions};
        for (const auto &factor : t.factors) {
            term.factors.push_back(factor.matrix());
        }
        f.terms.push_back(std::move(term));
    }
    return f;
}

QuasiMixture load_mixture(const MixtureFile &f) {
    auto th = theories_for(f.parties);
    QuasiMixture m;
    m.frame_id = f.frame_id;
    m.negativity = f.negativity;
    m.residual = f.residual;
    m.l1 = f.l1;
    m.dropped_mass = f.dropped_mass;
    for (const auto &t : f.terms) {
        MixtureTerm term{t.weight, {}, t.functions};
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            const auto &mat = t.factors[i];
            if (mat.rows() != th.out[i].system.dim || mat.cols() != th.in[i].system.dim) {
                malformed("factor shape does not match its party's theories");
            }
            term.factors.push_back(PartitionedMap::local(th.in[i].system, th.out[i].system, mat));
        }
        m.terms.push_back(std::move(term));
    }
    return m;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        malformed("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream o(path, std::ios::binary | std::ios::trunc);
    if (!o || !(o << contents)) {
        throw Error(ErrorKind::MalformedInput, "cannot write '" + path + "'");
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Non-signalling channel decomposition in generalised probabilistic theories", "gptns"};
    app.require_subcommand(1);

    auto *theory = app.add_subcommand("theory", "Inspect a built-in theory");
    theory->require_subcommand(1);
    auto *show = theory->add_subcommand("show", "Print a theory's system and fiducial frame");
    std::string theory_id;
    show->add_option("id", theory_id, "classical:<d>, gbit or qubit")->required();

    double tol = kDefaultTol;
    auto *check = app.add_subcommand("check", "Check discard preservation and non-signalling");
    std::string channel_path;
    check->add_option("--channel", channel_path, "ChannelFile")->required();
    check->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    auto *decompose = app.add_subcommand("decompose", "Decompose a non-signalling channel");
    std::string mode = "channels";
    std::string algorithm = "pipeline";
    std::string objective = "feasible";
    std::string out_path;
    decompose->add_option("--channel", channel_path, "ChannelFile")->required();
    decompose->add_option("--mode", mode, "dp or channels")->check(CLI::IsMember({"dp", "channels"}));
    decompose->add_option("--algorithm", algorithm, "pipeline or direct")
        ->check(CLI::IsMember({"pipeline", "direct"}));
    decompose->add_option("--objective", objective, "feasible or min-negativity")
        ->check(CLI::IsMember({"feasible", "min-negativity"}));
    decompose->add_option("--out", out_path, "MixtureFile to write")->required();
    decompose->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    auto *reconstruct_cmd = app.add_subcommand("reconstruct", "Rebuild a channel from a mixture");
    std::string mix_path;
    reconstruct_cmd->add_option("--mix", mix_path, "MixtureFile")->required();
    reconstruct_cmd->add_option("--channel", channel_path, "ChannelFile to compare against");
    reconstruct_cmd->add_option("--out", out_path, "ChannelFile to write");
    reconstruct_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    auto *negativity_cmd = app.add_subcommand("negativity", "Report the negativity of a mixture");
    negativity_cmd->add_option("--mix", mix_path, "MixtureFile")->required();
    negativity_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    auto *random_ns = app.add_subcommand("random-ns", "Write a random non-signalling channel");
    std::string theory_ids;
    std::uint64_t seed = 0;
    double mix = 0.5;
    bool signalling = false;
    random_ns->add_option("--theories", theory_ids, "Comma-separated theory per party")->required();
    random_ns->add_option("--seed", seed, "Seed")->required();
    random_ns->add_option("--out", out_path, "ChannelFile to write")->required();
    random_ns->add_option("--mix", mix, "Weight of the embedded box");
    random_ns->add_flag("--signalling", signalling, "Embed a copy box instead (for testing)");
    random_ns->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformedInput;
    }

    try {
        if (show->parsed()) {
            return cmd_theory_show(theory_id, out);
        }
        if (check->parsed()) {
            return cmd_check(channel_path, tol, out, err);
        }
        if (decompose->parsed()) {
            DecomposeOptions options;
            options.mode = mode == "dp" ? DecomposeMode::DpFactors : DecomposeMode::ChannelFactors;
            options.algorithm = algorithm == "direct" ? Algorithm::Direct : Algorithm::Pipeline;
            options.objective = parse_objective(objective);
            options.tol = tol;
            return cmd_decompose(channel_path, options, out_path, out);
        }
        if (reconstruct_cmd->parsed()) {
            return cmd_reconstruct(mix_path, channel_path, out_path, out);
        }
        if (negativity_cmd->parsed()) {
            return cmd_negativity(mix_path, out);
        }
        if (random_ns->parsed()) {
            return cmd_random_ns(theory_ids, seed, mix, signalling, out_path, out);
        }
    } catch (const Error &e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::MalformedInput ? kMalformedInput : kDomainError;
    } catch (const std::exception &e) {
        // File system and allocation failures.
        err << "Error: " << e.what() << "\n";
        return kDomainError;
    }
    return kMalformedInput;
}

}  // namespace gptns::cli
