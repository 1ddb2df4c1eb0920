#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(QNLP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof(buf), pipe)) {
        result.output.append(buf, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "qnlp_cli_test";
    fs::create_directories(dir);
    return dir;
}

const std::string kData = QNLP_DATA_DIR;

}  // namespace

TEST_CASE("parse emits the diagram and the right exit codes") {
    const CmdResult ok = run_cli("parse --lexicon seed \"Main School jaata hu\"");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("\"open\":[4]") != std::string::npos);

    const CmdResult second = run_cli("parse --lexicon seed \"Mukesh ne khaana khaya\"");
    CHECK(second.exit_code == 0);
    CHECK(second.output.find("[3,4]") != std::string::npos);

    CHECK(run_cli("parse --lexicon seed \"Main Main\"").exit_code == 2);
    CHECK(run_cli("parse --lexicon seed \"Main zzz\"").exit_code == 2);
    CHECK(run_cli("parse --lexicon /nonexistent.json \"Main\"").exit_code == 1);
    CHECK(run_cli("bogus-subcommand").exit_code == 3);
}

TEST_CASE("diagram renders dot") {
    const CmdResult dot = run_cli("diagram --lexicon seed --format dot \"Main School jaata hu\"");
    CHECK(dot.exit_code == 0);
    CHECK(dot.output.find("graph diagram {") != std::string::npos);
    CHECK(run_cli("diagram --lexicon seed --format svg \"Main School jaata hu\"").exit_code == 3);
}

TEST_CASE("compile reports the paper structure") {
    const CmdResult plain = run_cli("compile --lexicon seed \"Main School jaata hu\"");
    CHECK(plain.exit_code == 0);
    CHECK(plain.output.find("\"width\":7") != std::string::npos);

    const CmdResult rewritten =
        run_cli("compile --lexicon seed --rewrite \"Main School jaata hu\"");
    CHECK(rewritten.output.find("\"width\":4") != std::string::npos);

    const CmdResult qasm =
        run_cli("compile --lexicon seed --format qasm --seed 7 \"Main School jaata hu\"");
    CHECK(qasm.exit_code == 0);
    CHECK(qasm.output.find("measure q[4] -> c[0]") != std::string::npos);
    CHECK(run_cli("compile --lexicon seed --format exe \"Main School jaata hu\"").exit_code == 3);
}

TEST_CASE("run emits a distribution and can dump the state") {
    const CmdResult dist = run_cli("run --lexicon seed --seed 5 \"Mukesh ne khaana khaya\"");
    CHECK(dist.exit_code == 0);
    CHECK(dist.output.find("\"probabilities\"") != std::string::npos);
    CHECK(dist.output.find("\"success_weight\"") != std::string::npos);
    CHECK(dist.output.find("\"state\"") == std::string::npos);

    const CmdResult dumped =
        run_cli("run --lexicon seed --seed 5 --dump-state \"Mukesh ne khaana khaya\"");
    CHECK(dumped.output.find("\"state\"") != std::string::npos);
}

TEST_CASE("train, eval and predict round-trip through files") {
    const fs::path dir = temp_dir();
    const fs::path cfg_path = dir / "config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"rewrite": true, "train": {"seed": 7, "iterations": 3}})";
    }
    const std::string common = "--lexicon " + kData + "/toy_lexicon.json --dataset " + kData +
                               "/toy_corpus.jsonl --config " + cfg_path.string();

    const fs::path ck1 = dir / "model1.json";
    const fs::path ck2 = dir / "model2.json";
    const CmdResult t1 = run_cli("train " + common + " --output " + ck1.string());
    CHECK(t1.exit_code == 0);
    const CmdResult t2 = run_cli("train " + common + " --output " + ck2.string());
    CHECK(t2.exit_code == 0);
    CHECK(slurp(ck1) == slurp(ck2));  // same seed, byte-identical checkpoints

    const std::string hist = slurp(fs::path(ck1.string() + ".history.jsonl"));
    CHECK(std::count(hist.begin(), hist.end(), '\n') == 3);

    // The env seed takes precedence and must change the checkpoint.
    const fs::path ck3 = dir / "model3.json";
    const CmdResult t3 = run_cli("train " + common + " --output " + ck3.string(), "QNLP_SEED=99");
    CHECK(t3.exit_code == 0);
    CHECK(slurp(ck1) != slurp(ck3));

    const CmdResult ev = run_cli("eval --lexicon " + kData + "/toy_lexicon.json --dataset " +
                                 kData + "/toy_corpus.jsonl --model " + ck1.string() +
                                 " --split train");
    CHECK(ev.exit_code == 0);
    CHECK(ev.output.find("\"accuracy\":") != std::string::npos);

    const CmdResult pred = run_cli("predict --lexicon " + kData +
                                   "/toy_lexicon.json --model " + ck1.string() +
                                   " \"Main School jaata hu\"");
    CHECK(pred.exit_code == 0);
    CHECK(pred.output.find("\"p0\":") != std::string::npos);
    CHECK(pred.output.find("\"p1\":") != std::string::npos);

    // Unparseable dataset sentences exit 2.
    const fs::path bad = dir / "bad.jsonl";
    {
        std::ofstream out(bad);
        out << R"({"tokens": ["Main", "Main"], "label": 0, "split": "train"})" << "\n";
        out << R"({"tokens": ["Main", "School", "jaata", "hu"], "label": 1, "split": "train"})"
            << "\n";
    }
    CHECK(run_cli("train --lexicon " + kData + "/toy_lexicon.json --dataset " + bad.string() +
                  " --output " + (dir / "nope.json").string())
              .exit_code == 2);
}

TEST_CASE("lexicon-validate distinguishes sound and broken files") {
    const CmdResult ok = run_cli("lexicon-validate --lexicon " + kData + "/seed_lexicon.json");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("\"entries\":8") != std::string::npos);

    const fs::path dir = temp_dir();
    const fs::path broken = dir / "broken.json";
    {
        std::ofstream out(broken);
        out << R"({"symbols": ["n"], "entries": [{"surface": "w", "type": ["q.l"]}]})";
    }
    CHECK(run_cli("lexicon-validate --lexicon " + broken.string()).exit_code == 3);
    CHECK(run_cli("lexicon-validate --lexicon /nonexistent.json").exit_code == 1);
}
