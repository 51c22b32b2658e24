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


#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gptns/cli.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gptns;
using namespace gptns::cli;

namespace {

const std::string kPrBox = std::string(GPTNS_DATA_DIR) + "/prbox.json";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string &hay, const std::string &needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, TheoryShow) {
    Result r = run_cli({"theory", "show", "classical:2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "dim: 2\n"));
    EXPECT_TRUE(contains(r.out, "hopping metric:\n  [1, 0]\n  [0, 1]\n"));
    EXPECT_TRUE(contains(r.out, "frame valid: yes"));
    Result q = run_cli({"theory", "show", "qubit"});
    EXPECT_EQ(q.code, 0);
    EXPECT_TRUE(contains(q.out, "dim: 4\n"));
}

TEST(Cli, CheckPrBox) {
    Result r = run_cli({"check", "--channel", kPrBox});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "non-signalling: yes"));
    EXPECT_TRUE(contains(r.out, "party 0 violation: 0\n"));
    EXPECT_TRUE(contains(r.out, "party 1 violation: 0\n"));
}

TEST(Cli, DecomposePrBoxMinNegativity) {
    auto dir = testutil::temp_dir("decompose_pr");
    std::string mix = (dir / "mix.json").string();
    Result r = run_cli({"decompose", "--channel", kPrBox, "--objective", "min-negativity", "--out", mix});
    ASSERT_EQ(r.code, 0) << r.err;
    MixtureFile f = parse_mixture(read_file(mix));
    double sum = 0.0;
    double l1 = 0.0;
    for (const auto &t : f.terms) {
        sum += t.weight;
        l1 += std::abs(t.weight);
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_LE(f.residual, 1e-9);
    RealMatrix pr = pr_box();
    double best = oracle::min_l1_by_vertices(oracle::binary_local_boxes(), Vector(pr.entries().begin(), pr.entries().end()));
    EXPECT_NEAR(l1, best, 1e-6);
    EXPECT_NEAR(f.negativity, (best - 1.0) / 2.0, 1e-6);

    Result rec = run_cli({"reconstruct", "--mix", mix, "--channel", kPrBox});
    EXPECT_EQ(rec.code, 0) << rec.err;
    EXPECT_TRUE(contains(rec.out, "residual: 0\n")) << rec.out;

    Result neg = run_cli({"negativity", "--mix", mix});
    EXPECT_EQ(neg.code, 0);
    EXPECT_TRUE(contains(neg.out, "negativity: 0.5\n"));
}

TEST(Cli, DecomposeThenReconstructStaysWithinTolerance) {
    auto dir = testutil::temp_dir("roundtrip");
    std::string chan = (dir / "chan.json").string();
    std::string mix = (dir / "mix.json").string();
    std::string rebuilt = (dir / "rebuilt.json").string();
    ASSERT_EQ(run_cli({"random-ns", "--theories", "gbit,qubit", "--seed", "3", "--out", chan}).code, 0);
    for (const char *mode : {"dp", "channels"}) {
        Result d = run_cli({"decompose", "--channel", chan, "--mode", mode, "--out", mix, "--tol", "1e-8"});
        ASSERT_EQ(d.code, 0) << d.err;
        Result r = run_cli({"reconstruct", "--mix", mix, "--channel", chan, "--out", rebuilt});
        ASSERT_EQ(r.code, 0) << r.err;
        auto pos = r.out.find("residual: ");
        ASSERT_NE(pos, std::string::npos);
        EXPECT_LE(std::stod(r.out.substr(pos + 10)), 1e-8);
        ChannelFile original = parse_channel(read_file(chan));
        ChannelFile again = parse_channel(read_file(rebuilt));
        EXPECT_LE(max_abs_diff(original.matrix, again.matrix), 1e-8);
    }
}

TEST(Cli, ExitCodes) {
    auto dir = testutil::temp_dir("exit_codes");
    std::string bad_json = (dir / "bad.json").string();
    write_file(bad_json, "{ not json");
    Result r = run_cli({"check", "--channel", bad_json});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "MalformedInput"));

    EXPECT_EQ(run_cli({"theory", "show", "qutrit"}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"decompose", "--channel", kPrBox}).code, 2);
    EXPECT_EQ(run_cli({"check", "--channel", (dir / "missing.json").string()}).code, 2);

    std::string sig = (dir / "sig.json").string();
    ASSERT_EQ(run_cli({"random-ns", "--theories", "classical:2,classical:2", "--seed", "1", "--signalling", "--out",
                       sig})
                  .code,
              0);
    Result c = run_cli({"check", "--channel", sig});
    EXPECT_EQ(c.code, 1);
    EXPECT_TRUE(contains(c.out, "non-signalling: no"));
    Result d = run_cli({"decompose", "--channel", sig, "--out", (dir / "m.json").string()});
    EXPECT_EQ(d.code, 1);
    EXPECT_TRUE(contains(d.err, "NotNonSignalling"));

    std::string pr_mix = (dir / "pr.json").string();
    ASSERT_EQ(run_cli({"decompose", "--channel", kPrBox, "--out", pr_mix}).code, 0);
    MixtureFile f = parse_mixture(read_file(pr_mix));
    std::string not_affine = (dir / "na.json").string();
    f.terms[0].weight += 0.5;
    write_file(not_affine, dump_mixture(f));
    Result n = run_cli({"negativity", "--mix", not_affine});
    EXPECT_EQ(n.code, 1);
    EXPECT_TRUE(contains(n.err, "WeightsNotAffine"));
}

TEST(Cli, ShapeDisagreementIsMalformed) {
    ChannelFile f = parse_channel(read_file(kPrBox));
    f.parties[1].out_theory = "classical:3";
    EXPECT_GPTNS_ERROR(parse_channel(dump_channel(f)), ErrorKind::MalformedInput);
    f = parse_channel(read_file(kPrBox));
    f.format_version = 2;
    EXPECT_GPTNS_ERROR(parse_channel(dump_channel(f)), ErrorKind::MalformedInput);
}

TEST(Cli, SerializationRoundTripIsExact) {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        ChannelFile c;
        c.parties = {{"gbit", "classical:2"}};
        c.matrix = testutil::random_matrix(rng, 2, 3, -1e3, 1e3);
        c.matrix(0, 0) = 1.0 / 3.0;
        c.matrix(1, 2) = 1e-300;
        ChannelFile back = parse_channel(dump_channel(c));
        EXPECT_EQ(back.matrix, c.matrix);
        EXPECT_EQ(back.parties, c.parties);
        EXPECT_EQ(dump_channel(back), dump_channel(c));

        MixtureFile m;
        m.frame_id = "x";
        m.parties = c.parties;
        m.mode = "channels";
        m.algorithm = "pipeline";
        m.objective = "feasible";
        for (int k = 0; k < 3; ++k) {
            m.terms.push_back(MixtureFileTerm{rng.normal(), {testutil::random_matrix(rng, 2, 3)}, {rng.below(8)}});
        }
        m.negativity = rng.uniform();
        m.residual = rng.uniform() * 1e-12;
        MixtureFile mb = parse_mixture(dump_mixture(m));
        ASSERT_EQ(mb.terms.size(), m.terms.size());
        for (std::size_t k = 0; k < m.terms.size(); ++k) {
            EXPECT_EQ(mb.terms[k].weight, m.terms[k].weight);
            EXPECT_EQ(mb.terms[k].factors, m.terms[k].factors);
            EXPECT_EQ(mb.terms[k].functions, m.terms[k].functions);
        }
        EXPECT_EQ(mb.negativity, m.negativity);
        EXPECT_EQ(mb.residual, m.residual);
        EXPECT_EQ(dump_mixture(mb), dump_mixture(m));
    }
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
    auto dir = testutil::temp_dir("determinism");
    std::vector<std::string> outputs;
    for (int run_index = 0; run_index < 2; ++run_index) {
        std::string chan = (dir / ("chan" + std::to_string(run_index) + ".json")).string();
        std::string mix = (dir / ("mix" + std::to_string(run_index) + ".json")).string();
        ASSERT_EQ(run_cli({"random-ns", "--theories", "gbit,gbit", "--seed", "7", "--out", chan}).code, 0);
        ASSERT_EQ(run_cli({"decompose", "--channel", chan, "--objective", "min-negativity", "--out", mix}).code, 0);
        outputs.push_back(read_file(chan) + read_file(mix));
    }
    EXPECT_EQ(outputs[0], outputs[1]);
}
