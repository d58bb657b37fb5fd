#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shiftlcs/cli.hpp"
#include "shiftlcs/lcs.hpp"
#include "shiftlcs/words.hpp"

using namespace shiftlcs;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("lcs subcommand")
{
    CHECK(run({"lcs", "abedbba", "aabdca"}).out == "4\n");
    CHECK(run({"lcs", "", "abc"}).out == "0\n");
    CHECK(run({"lcs", "--kernel", "oracle", "abedbba", "aabdca"}).out == "4\n");
    CHECK(run({"lcs", "--kernel", "dp", "1,2,3", "3,2,1"}).out == "1\n");

    const Run w = run({"lcs", "--witness", "abedbba", "aabdca"});
    CHECK(w.code == 0);
    CHECK(w.out == "4\n[[0,0],[1,2],[3,3],[6,5]]\n");

    SUBCASE("failures exit nonzero")
    {
        const std::string fifteen(15, 'a');
        const Run guard = run({"lcs", "--kernel", "oracle", fifteen, fifteen});
        CHECK(guard.code != 0);
        CHECK(guard.err.find("14") != std::string::npos);
        CHECK(run({"lcs", "ab#", "abc"}).code != 0);
        CHECK(run({"lcs", "abc"}).code != 0);
        CHECK(run({"lcs", "--kernel", "quantum", "a", "b"}).code != 0);
    }
    SUBCASE("oracle and dp print the same on random length-10 words")
    {
        for (std::uint64_t t = 0; t < 100; ++t) {
            const std::string v = random_word(3, 10, SeedSpec{50, 2 * t}).to_letters();
            const std::string u = random_word(3, 10, SeedSpec{50, 2 * t + 1}).to_letters();
            REQUIRE(run({"lcs", "--kernel", "oracle", v, u}).out == run({"lcs", "--kernel", "dp", v, u}).out);
        }
    }
    SUBCASE("word files")
    {
        TempDir dir("shiftlcs_cli_words");
        const fs::path file = dir.path / "pair.txt";
        std::ofstream(file) << "k=30\n30,1,2,29\n1,29,30\n";
        CHECK(run({"lcs", "--file", file.string()}).out == "2\n");
    }
}

TEST_CASE("alignment emission")
{
    TempDir dir("shiftlcs_cli_align");
    const fs::path path = dir.path / "align.json";
    // n = 8, s = 8: the diagonal witness has every span equal to 8
    const Run r = run({"lcs", "--s", "8", "--eps", "0.25", "--emit-alignment", path.string(), "abcdabcd", "abcdabcd"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["alignment"].size() == 8);
    CHECK(doc["spans"] == nlohmann::json::parse("[8,8,8,8,8,8,8,8]"));
    CHECK(doc["case"] == "large");
    REQUIRE(doc["partition"].is_object());
    CHECK(doc["partition"]["v_blocks"].size() == doc["partition"]["w_blocks"].size());
    CHECK(doc["partition"]["dominated_lcs"] == 8);

    const Run near = run({"lcs", "--s", "1", "--emit-alignment", path.string(), "abcd", "bcde"});
    REQUIRE(near.code == 0);
    const auto doc2 = nlohmann::json::parse(slurp(path));
    CHECK(doc2["case"] == "nonpositive");
    CHECK(doc2["partition"].is_null());
}

TEST_CASE("bounds subcommand")
{
    CHECK(run({"bounds", "boris", "--m", "8", "--k", "2", "--lambda", "1"}).out == "0.367879\n");
    CHECK(run({"bounds", "boriseasy", "--m", "32", "--k", "2", "--lambda", "2"}).out == "0.000911882\n");
    CHECK(run({"bounds", "gamma-bracket", "--n", "1000", "--mean", "812"}).out == "(0.812, 1.14445)\n");
    CHECK(run({"bounds", "azuma", "--lambda", "0", "--n", "10"}).out == "1\n");
    CHECK(run({"bounds", "hoeffding", "--t", "1", "--ranges", "0:1"}).out == "0.135335\n");
    CHECK(run({"bounds", "binom-upper", "--n", "10", "--j", "1"}).out == "27.1828\n");
    CHECK(run({"bounds", "blockcount", "--n", "10", "--eps", "0.5"}).out == "2025\n");
    CHECK(run({"bounds", "exp-inequality", "--x", "0.5"}).out == "holds\n");
    CHECK(run({"bounds", "theorem1", "--n", "100", "--t", "60"}).out == "2.31952e-16 in-regime (t >= 60)\n");
    CHECK(run({"bounds", "theorem1", "--n", "100", "--t", "10"}).out.find("out-of-regime") != std::string::npos);

    SUBCASE("constant check table")
    {
        const Run r = run({"bounds", "--check-constants", "--kmax", "26"});
        CHECK(r.code == 0);
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);  // header
        int rows = 0;
        while (std::getline(lines, line) && line.rfind("claim", 0) != 0) {
            ++rows;
            CHECK(line.substr(line.size() - 5) == "holds");
        }
        CHECK(rows == 25);
        CHECK(line == "claim: holds for 2 <= k <= 26");
        CHECK(r.out.find("3 0.57735 inverse-sqrt-k -0.0110695 -0.00712122 holds") != std::string::npos);
    }
    SUBCASE("out-of-domain parameters")
    {
        CHECK(run({"bounds", "binom-upper", "--n", "3", "--j", "5"}).code != 0);
        CHECK(run({"bounds", "boris", "--m", "0", "--k", "2", "--lambda", "1"}).code != 0);
        CHECK(run({"bounds", "boris", "--m", "8"}).code != 0);
        CHECK(run({"bounds", "nonsense"}).code != 0);
    }
}

TEST_CASE("simulate subcommand")
{
    TempDir dir("shiftlcs_cli_sim");

    SUBCASE("SHIFT sweep trends down to the L_n plateau")
    {
        const fs::path out = dir.path / "sweep";
        const Run r = run({"simulate", "--kind", "shift", "--k", "2", "--n", "400", "--s", "0,100,200,300,400", "--trials", "60",
                           "--seed", "9", "--out", out.string(), "--plot-data"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("replay seed: 9\n", 0) == 0);
        const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
        const auto& results = summary["results"];
        REQUIRE(results.size() == 5);
        for (std::size_t i = 1; i < 5; ++i) {
            const double prev = results[i - 1]["summary"]["mean"];
            const double cur = results[i]["summary"]["mean"];
            const double se_prev = results[i - 1]["summary"]["std_error"];
            const double se_cur = results[i]["summary"]["std_error"];
            CHECK(cur <= prev + 3 * std::sqrt(se_prev * se_prev + se_cur * se_cur));
        }
        CHECK(results[0]["summary"]["mean"] == 400.0);
        CHECK(fs::exists(out / "records.csv"));
        const std::string plot = slurp(out / "mean_vs_s.dat");
        CHECK(std::count(plot.begin(), plot.end(), '\n') >= 5);
    }
    SUBCASE("one trial reports std 0 with a flag")
    {
        const Run r = run({"simulate", "--kind", "ln", "--n", "50", "--trials", "1"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out.substr(r.out.find('\n') + 1));
        CHECK(doc["results"][0]["summary"]["std"] == 0.0);
        CHECK(doc["results"][0]["summary"]["std_defined"] == false);
    }
    SUBCASE("reruns from a config file or a summary are byte-identical")
    {
        const fs::path config = dir.path / "tails.json";
        std::ofstream(config) << R"({"version": 1, "kind": "tails", "k": 2, "n": 200, "s": 100, "trials": 40, "seed": 77})";
        const fs::path a = dir.path / "a", b = dir.path / "b", c = dir.path / "c";
        REQUIRE(run({"simulate", "--config", config.string(), "--out", a.string()}).code == 0);
        REQUIRE(run({"simulate", "--config", config.string(), "--threads", "4", "--out", b.string()}).code == 0);
        REQUIRE(run({"simulate", "--config", (a / "summary.json").string(), "--out", c.string()}).code == 0);
        CHECK(slurp(a / "records.csv") == slurp(b / "records.csv"));
        CHECK(slurp(a / "records.csv") == slurp(c / "records.csv"));
        CHECK(slurp(a / "summary.json") == slurp(c / "summary.json"));
    }
    SUBCASE("flags override the config file")
    {
        const fs::path config = dir.path / "ln.json";
        std::ofstream(config) << R"({"version": 1, "kind": "ln", "k": 2, "n": 30, "trials": 5})";
        const Run r = run({"simulate", "--config", config.string(), "--n", "12", "--seed", "3"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out.substr(r.out.find('\n') + 1));
        CHECK(doc["config"]["n"] == 12);
        CHECK(doc["config"]["trials"] == 5);
        CHECK(doc["replay_seed"] == 3);
    }
    SUBCASE("config faults produce an error document")
    {
        const fs::path config = dir.path / "bad.json";
        std::ofstream(config) << R"({"version": 1, "kind": "ln", "trails": 5})";
        const Run unknown = run({"simulate", "--config", config.string()});
        CHECK(unknown.code == kExitConfig);
        const auto err = nlohmann::json::parse(unknown.err);
        CHECK(err["error"] == "config");
        CHECK(err["field"] == "trails");

        const Run shift = run({"simulate", "--kind", "shift", "--n", "10", "--s", "11"});
        CHECK(shift.code == kExitConfig);
        CHECK(nlohmann::json::parse(shift.err)["field"] == "s");

        const Run kind = run({"simulate", "--kind", "bogus"});
        CHECK(kind.code == kExitConfig);
        CHECK(nlohmann::json::parse(kind.err)["field"] == "kind");

        const Run trials = run({"simulate", "--trials", "0"});
        CHECK(trials.code == kExitConfig);
    }
}

TEST_CASE("words subcommand")
{
    const Run r = run({"words", "--k", "3", "--n", "6", "--s", "2", "--seed", "5", "--source"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, z, v, w;
    std::getline(lines, header);
    std::getline(lines, z);
    std::getline(lines, v);
    std::getline(lines, w);
    CHECK(header == "k=3");
    CHECK(z.size() == 8);
    CHECK(v == z.substr(0, 6));
    CHECK(w == z.substr(2, 6));
}

TEST_CASE("installed binary exit codes")
{
    const std::string cli = SHIFTLCS_CLI_PATH;
    CHECK(std::system((cli + " lcs abedbba aabdca > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " simulate --trials 0 2> /dev/null").c_str()) != 0);
}
