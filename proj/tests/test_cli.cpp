// End-to-end checks of the qcs binary: exit codes, file outputs, determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = QCS_BIN;
const std::string kShare = QCS_SHARE_DIR;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qcs_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int n = 0;
        return n++;
    }
    std::string str() const { return path.string(); }
};

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("compile produces streams and a listing") {
    TempDir tmp;
    const int rc = run("compile --program " + kShare + "/example.qp --config " + kShare +
                       "/runconfig.json --out " + tmp.str());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.path / "example.qcis"));
    const auto listing = slurp(tmp.path / "example.list.txt");
    CHECK(listing.find("PLAY") != std::string::npos);
    CHECK(listing.find("CAPTURE") != std::string::npos);
    CHECK(listing.find("tick") != std::string::npos);
}

TEST_CASE("compile rejects a syntax error with exit 1") {
    TempDir tmp;
    spit(tmp.path / "bad.qp", "play nothing declared;");
    CHECK(run("compile --program " + (tmp.path / "bad.qp").string() + " --out " + tmp.str()) ==
          1);
}

TEST_CASE("compile rejects queue overflow with exit 2") {
    TempDir tmp;
    std::string text = "frame f0 ch=0 freq=1e6 phase=0; waveform w rect len=4;\n";
    for (int i = 0; i < 70; ++i) text += "play f0 w;\n";
    spit(tmp.path / "hog.qp", text);
    CHECK(run("compile --program " + (tmp.path / "hog.qp").string() + " --out " + tmp.str()) ==
          2);
}

TEST_CASE("run executes streams and writes deterministic traces") {
    TempDir tmp;
    REQUIRE(run("compile --program " + kShare + "/example.qp --out " + tmp.str()) == 0);
    const auto streams = (tmp.path / "example.qcis").string();

    REQUIRE(run("run --streams " + streams + " --out " + (tmp.path / "a").string()) == 0);
    REQUIRE(run("run --streams " + streams + " --out " + (tmp.path / "b").string()) == 0);

    const auto summary = json::parse(slurp(tmp.path / "a" / "run_summary.json"));
    CHECK(summary["instructions"]["remaining"] == 0);
    CHECK(summary["traces"].size() >= 2);

    bool compared = false;
    for (const auto& name : summary["traces"]) {
        const std::string file = name.get<std::string>();
        REQUIRE(slurp(tmp.path / "a" / file) == slurp(tmp.path / "b" / file));
        compared = true;
    }
    CHECK(compared);
}

TEST_CASE("verify passes clean and fails under every fault") {
    TempDir tmp;
    const std::string base = "verify --config " + kShare + "/runconfig.json --seed 99 --out ";

    CHECK(run(base + (tmp.path / "clean").string()) == 0);
    const auto summary = json::parse(slurp(tmp.path / "clean" / "summary.json"));
    CHECK(summary["pass"] == true);
    CHECK(summary["latency_pass"] == true);

    CHECK(run(base + (tmp.path / "h").string() + " --fault harmonic") == 3);
    const auto harmonic = json::parse(slurp(tmp.path / "h" / "summary.json"));
    std::size_t failures = 0;
    for (const auto& c : harmonic["cases"]) failures += c["pass"] == false ? 1 : 0;
    CHECK(failures == harmonic["cases"].size());  // mutation sensitivity 100%

    CHECK(run(base + (tmp.path / "s").string() + " --fault sample") == 3);
    CHECK(run(base + (tmp.path / "l").string() + " --fault latency") == 3);
    const auto latency = json::parse(slurp(tmp.path / "l" / "latency.json"));
    CHECK(latency["pass"] == false);
}

TEST_CASE("verify with zero tolerance fails every nonzero-amplitude case") {
    TempDir tmp;
    json cfg = json::parse(slurp(fs::path(kShare) / "runconfig.json"));
    cfg["tolerances"]["comparator"] = 0.0;
    cfg["verify_cases"] = 6;
    spit(tmp.path / "cfg.json", cfg.dump());
    CHECK(run("verify --config " + (tmp.path / "cfg.json").string() + " --seed 5 --out " +
              (tmp.path / "out").string()) == 3);
    const auto summary = json::parse(slurp(tmp.path / "out" / "summary.json"));
    for (const auto& c : summary["cases"]) CHECK(c["pass"] == false);
}

TEST_CASE("verify without a seed is refused") {
    TempDir tmp;
    json cfg = json::parse(slurp(fs::path(kShare) / "runconfig.json"));
    cfg.erase("seed");
    spit(tmp.path / "cfg.json", cfg.dump());
    CHECK(run("verify --config " + (tmp.path / "cfg.json").string() + " --out " +
              (tmp.path / "out").string()) == 5);
}

TEST_CASE("scan fits the bundled duration spec within 1 percent") {
    TempDir tmp;
    REQUIRE(run("scan --spec " + kShare + "/scan_duration.json --out " + tmp.str()) == 0);
    const auto scan = json::parse(slurp(tmp.path / "scan.json"));
    REQUIRE(!scan["fit"].is_null());
    // drive.coupling * amplitude = 2 pi MHz -> P oscillates at 1 MHz
    const double fitted = scan["fit"]["frequency"];
    CHECK(std::abs(fitted - 1e6) / 1e6 <= 0.01);
    CHECK(fs::exists(tmp.path / "scan.csv"));
}

TEST_CASE("scan outputs are byte-identical for a fixed seed") {
    TempDir tmp;
    REQUIRE(run("scan --spec " + kShare + "/scan_duration.json --out " +
                (tmp.path / "a").string()) == 0);
    REQUIRE(run("scan --spec " + kShare + "/scan_duration.json --out " +
                (tmp.path / "b").string()) == 0);
    CHECK(slurp(tmp.path / "a" / "scan.csv") == slurp(tmp.path / "b" / "scan.csv"));
    CHECK(slurp(tmp.path / "a" / "scan.json") == slurp(tmp.path / "b" / "scan.json"));

    REQUIRE(run("scan --spec " + kShare + "/scan_duration.json --seed 1234 --out " +
                (tmp.path / "c").string()) == 0);
    CHECK(slurp(tmp.path / "a" / "scan.csv") != slurp(tmp.path / "c" / "scan.csv"));
}

TEST_CASE("amplitude scan writes a calibration") {
    TempDir tmp;
    REQUIRE(run("scan --spec " + kShare + "/scan_amplitude.json --out " + tmp.str()) == 0);
    const auto cal = json::parse(slurp(tmp.path / "calibration.json"));
    CHECK(std::abs(cal["pi_amplitude"].get<double>() - 1.0) <= 0.01);
    CHECK(cal["pi_duration_s"].get<double>() == 5e-7);
}

TEST_CASE("flat scans exit 4") {
    TempDir tmp;
    CHECK(run("scan --spec " + kShare + "/scan_flat.json --out " + tmp.str()) == 4);
    CHECK(fs::exists(tmp.path / "scan.json"));  // results still land on disk
}

TEST_CASE("report renders scan output and extracts csv") {
    TempDir tmp;
    REQUIRE(run("scan --spec " + kShare + "/scan_duration.json --out " + tmp.str()) == 0);
    CHECK(run("report --in " + (tmp.path / "scan.json").string()) == 0);
    CHECK(run("report --in " + (tmp.path / "scan.json").string() + " --format csv --out " +
              tmp.str()) == 0);
    const auto csv = slurp(tmp.path / "report.csv");
    CHECK(csv.rfind("x,p_estimate,shots\n", 0) == 0);
    CHECK(run("report --in " + (tmp.path / "scan.json").string() + " --format svg --out " +
              tmp.str()) == 0);
    CHECK(slurp(tmp.path / "report.svg").find("<svg") != std::string::npos);
}

TEST_CASE("unknown flags come back as CLI errors, not our exit codes") {
    const int rc = run("compile --no-such-flag");
    CHECK(rc >= 100);  // CLI11 reserves >= 100
}
