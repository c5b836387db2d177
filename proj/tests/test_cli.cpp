#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("bhv-cli-" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string &args, const std::string &env = "")
    {
        const std::string cmd = env + (env.empty() ? "" : " ") + "\"" BHV_CLI_PATH "\" --output \"" + dir_.string() +
                                "\" " + args + " > \"" + (dir_ / "stdout.txt").string() + "\" 2> \"" +
                                (dir_ / "stderr.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const std::string &name) const
    {
        std::ifstream in(dir_ / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, DeriveMatchesFixtures)
{
    EXPECT_EQ(run("derive --order 10 --case VII"), 0) << slurp("stderr.txt");
    EXPECT_TRUE(fs::exists(dir_ / "derive_VII.json"));
    EXPECT_TRUE(fs::exists(dir_ / "derive.run.json"));
    EXPECT_EQ(run("derive --case VI"), 0);
    EXPECT_EQ(run("derive --case V"), 0);
}

TEST_F(Cli, DeriveRejectsBadArguments)
{
    EXPECT_EQ(run("derive --order 7"), 2);
    EXPECT_EQ(run("derive --case IV"), 2);
    EXPECT_EQ(run("derive --perturb-fixture nonsense"), 2);
    EXPECT_EQ(run("no-such-command"), 2);
    EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, DeriveReportsPerturbedFixture)
{
    EXPECT_EQ(run("derive --case VII --perturb-fixture \"E2=2*B*p + 3*u\""), 1);
}

TEST_F(Cli, CheckCases)
{
    EXPECT_EQ(run("check-cases V VI"), 0) << slurp("stderr.txt");
    EXPECT_NE(slurp("cases.txt").find("contradiction-verified"), std::string::npos);
    EXPECT_EQ(run("check-cases --case III"), 0);
    EXPECT_EQ(run("check-cases IX"), 2);
}

TEST_F(Cli, PerturbedFixtureFailsCaseVII)
{
    EXPECT_EQ(run("check-cases VII --perturb-fixture \"E2=2*B*p + 2*p*t^2 + 2*p*t + 3*t*u + 3*u\""), 1);
    EXPECT_NE(slurp("stderr.txt").find("extraction matches E2"), std::string::npos);
}

TEST_F(Cli, CertifyAndVerify)
{
    ASSERT_EQ(run("certify"), 0) << slurp("stderr.txt");
    EXPECT_NE(slurp("stdout.txt").find("normal form of p*t^4: 0"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "basis_lex.json"));
    const fs::path cert = dir_ / "certificate.json";
    ASSERT_TRUE(fs::exists(cert));
    EXPECT_EQ(run("certify --verify-only \"" + cert.string() + "\""), 0);

    std::string text = slurp("certificate.json");
    const auto at = text.find("\"cofactors\": [\n");
    ASSERT_NE(at, std::string::npos);
    const auto q = text.find('"', at + 16);
    text.insert(q + 1, "1 + ");
    std::ofstream(dir_ / "tampered.json") << text;
    EXPECT_EQ(run("certify --verify-only \"" + (dir_ / "tampered.json").string() + "\""), 1);
    EXPECT_EQ(run("certify --verify-only \"" + (dir_ / "missing.json").string() + "\""), 2);
}

TEST_F(Cli, CertifyNonMember)
{
    EXPECT_EQ(run("certify --target 1"), 1);
    EXPECT_NE(slurp("stdout.txt").find("proper"), std::string::npos);
    EXPECT_EQ(run("certify --target \"p*\""), 2);
}

TEST_F(Cli, ResourceCap)
{
    EXPECT_EQ(run("certify", "BHV_MAX_REDUCTIONS=1"), 1);
    EXPECT_NE(slurp("stderr.txt").find("resource limit"), std::string::npos);
}

TEST_F(Cli, Simulate)
{
    EXPECT_EQ(run("simulate --preset catenoid"), 0) << slurp("stderr.txt");
    EXPECT_EQ(run("simulate --preset cylinder"), 0) << slurp("stderr.txt");
    EXPECT_EQ(run("simulate --sweep default --window 0.5 --step 0.01"), 0) << slurp("stderr.txt");
    EXPECT_EQ(run("simulate"), 2);
    EXPECT_EQ(run("simulate --preset torus"), 2);
}
