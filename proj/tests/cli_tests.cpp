// End-to-end tests of the dertool binary: exit-code contract, certificate
// round trips through real files, tamper detection, report determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "dertool-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string("\"") + DERTOOL_BIN + "\" " + args + " > \"" +
                      out.string() + "\" 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("series-claim passes and fails cleanly") {
    CHECK(run("series-claim --max-i 10 --order 30").code == 0);
    CHECK(run("series-claim --i 4").code == 0);
    CHECK(run("series-claim").code == 2); // neither --i nor --max-i
}

TEST_CASE("check classifies operators") {
    RunResult r = run("check --algebra builtin:T2 --op \"ad(E12)\" --json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"derivation\": true") != std::string::npos);
    CHECK(r.out.find("\"locally_nilpotent\": \"yes\"") != std::string::npos);

    RunResult p = run("check --algebra builtin:Q --polyext --op \"I-shift(1)\" --json");
    CHECK(p.code == 0);
    CHECK(p.out.find("\"ederivation\": true") != std::string::npos);
    CHECK(p.out.find("\"sampled\": true") != std::string::npos);
}

TEST_CASE("jc decomposes a matrix file") {
    fs::path m = work_dir() / "mat.json";
    write_file(m, R"([["1","1"],["0","1"]])");
    RunResult r = run("jc --matrix \"" + m.string() + "\" --json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"nilpotency_index\": 2") != std::string::npos);
}

TEST_CASE("grade reports NotSplit as a mathematical negative") {
    fs::path m = work_dir() / "rot.json";
    write_file(m, R"([["0","2"],["1","0"]])");
    RunResult r = run("grade --algebra builtin:QxQ --op \"matrix:" + m.string() +
                      "\" --kind derivation");
    CHECK(r.code == 1);
}

TEST_CASE("exp and log on the polynomial backend") {
    RunResult r =
        run("exp --algebra builtin:Q --polyext --op d/dt --elem \"t^2\" --json");
    CHECK(r.code == 0);
    CHECK(r.out.find("-2*t + -1") == std::string::npos); // canonical printing
    CHECK(r.out.find("\"result\": \"-1 - 2*t\"") != std::string::npos);

    RunResult l =
        run("log --algebra builtin:Q --polyext --op \"I-shift(1)\" --elem \"t^2\" --json");
    CHECK(l.code == 0);
    CHECK(l.out.find("\"result\": \"2*t\"") != std::string::npos);

    // exp of a non-LN operator is an input error.
    RunResult bad = run("exp --algebra builtin:Q --polyext --op \"shift(1)\" --elem \"t\"");
    CHECK(bad.code == 2);
}

TEST_CASE("certify then verify round-trips through files") {
    fs::path cert = work_dir() / "cert.json";
    RunResult c = run("certify --algebra builtin:T2 --polyext --op d/dt "
                      "--construction one_sided_left --e \"E11\" --target \"E12*t\" -o \"" +
                      cert.string() + "\"");
    CHECK(c.code == 0);
    REQUIRE(fs::exists(cert));

    RunResult v = run("verify --cert \"" + cert.string() + "\"");
    CHECK(v.code == 0);

    // Perturb one coefficient of the preimage: the verifier must object.
    std::string text = read_file(cert);
    auto pos = text.find("1/2*E12*t^2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "1/3");
    write_file(cert, text);
    RunResult bad = run("verify --cert \"" + cert.string() + "\"");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("expected") != std::string::npos);
}

TEST_CASE("ederiv and two-sided certificates through the CLI") {
    fs::path cert = work_dir() / "ederiv.json";
    RunResult c = run("certify --algebra builtin:Q --polyext --op \"I-shift(1)\" "
                      "--construction ederiv --target \"1\" -o \"" +
                      cert.string() + "\" --json");
    CHECK(c.code == 0);
    CHECK(c.out.find("\"preimage\": \"-t\"") != std::string::npos);
    CHECK(run("verify --cert \"" + cert.string() + "\"").code == 0);

    fs::path two = work_dir() / "two.json";
    RunResult t = run("certify --algebra builtin:T2 --polyext --op d/dt "
                      "--construction two_sided --e \"E11\" --a \"E11 + E12*t\" "
                      "--b \"E22 - E12\" -o \"" +
                      two.string() + "\"");
    CHECK(t.code == 0);
    CHECK(run("verify --cert \"" + two.string() + "\"").code == 0);
}

TEST_CASE("surjectivity verdicts map to exit codes") {
    RunResult pos = run("surjectivity --algebra builtin:Q --polyext --op \"I-shift(1)\" --json");
    CHECK(pos.code == 0);
    CHECK(pos.out.find("\"preimage_of_one\": \"-t\"") != std::string::npos);

    // phi(1) = 1, phi(x) = 2x: delta = I - phi never reaches 1.
    fs::path phi = work_dir() / "phi.json";
    write_file(phi, R"([["1","0"],["0","2"]])");
    RunResult neg = run("surjectivity --algebra builtin:dual --op \"I-endo:" +
                        phi.string() + "\" --kind ederivation --json");
    CHECK(neg.code == 1);
    CHECK(neg.out.find("not_in_image") != std::string::npos);

    // The identity E-derivation (phi = 0) is surjective; a certificate lands
    // on disk.
    fs::path zero = work_dir() / "zero.json";
    write_file(zero, R"([["0","0"],["0","0"]])");
    fs::path cert = work_dir() / "unit-cert.json";
    RunResult idr = run("surjectivity --algebra builtin:dual --op \"I-endo:" +
                        zero.string() + "\" --kind ederivation -o \"" + cert.string() +
                        "\" --json");
    CHECK(idr.code == 0);
    CHECK(run("verify --cert \"" + cert.string() + "\"").code == 0);
}

TEST_CASE("hunt reports are byte-identical for a fixed seed") {
    fs::path r1 = work_dir() / "hunt1.json";
    fs::path r2 = work_dir() / "hunt2.json";
    CHECK(run("hunt --mode roundtrip --seed 11 --trials 12 -o \"" + r1.string() + "\"").code == 0);
    CHECK(run("hunt --mode roundtrip --seed 11 --trials 12 -o \"" + r2.string() + "\"").code == 0);
    CHECK(read_file(r1) == read_file(r2));
    CHECK(!read_file(r1).empty());

    // The seed can come from the environment.
    RunResult env = run("hunt --mode transfer --trials 5 --json");
    CHECK(env.code == 0);
}

TEST_CASE("input errors use exit code 2") {
    CHECK(run("check --algebra builtin:nope --op identity").code == 2);
    CHECK(run("check --algebra builtin:T2 --op \"ad(E99)\"").code == 2);
    CHECK(run("verify --cert /nonexistent.json").code == 2);
    CHECK(run("certify --algebra builtin:T2 --polyext --op d/dt "
              "--construction one_sided_left")
              .code == 2); // missing --e
    CHECK(run("wat").code == 2);
}

TEST_CASE("algebra files load and validate") {
    fs::path alg = work_dir() / "dual.json";
    write_file(alg, R"({
      "dim": 2,
      "basis": ["1", "x"],
      "table": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]],
      "unit": ["1","0"]
    })");
    RunResult r = run("check --algebra \"" + alg.string() + "\" --op identity --json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"endomorphism\": true") != std::string::npos);

    // Break the unit law: x * 1 = 0 while claiming 1 as the unit.
    write_file(alg, R"({
      "dim": 2,
      "basis": ["1", "x"],
      "table": [[["1","0"],["0","1"]],[["0","0"],["0","0"]]],
      "unit": ["1","0"]
    })");
    CHECK(run("check --algebra \"" + alg.string() + "\" --op identity").code == 2);
}
