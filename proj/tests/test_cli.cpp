#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "convdist/csv.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return CONVDIST_CLI_PATH; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("convdist_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write(const fs::path& p, const std::string& text) {
    convdist::write_file(p.string(), text);
}

std::string slurp(const fs::path& p) { return convdist::read_file(p.string()); }

const char* kDistClosedForm =
    "[ground]\n"
    "kind = alphabet\n"
    "size = 4\n"
    "[event]\n"
    "kind = count_upper\n"
    "region = a,b,c,d\n"
    "k = 2\n"
    "[distance]\n"
    "kind = poisson_pi\n"
    "[input]\n"
    "xi = a:1,b:1,c:1,d:1\n";

}  // namespace

TEST_CASE("dist command emits the closed-form value") {
    TempDir dir;
    const fs::path cfg = dir.path / "dist.cfg";
    const fs::path out = dir.path / "dist.csv";
    write(cfg, kDistClosedForm);
    const int rc = run("dist " + cfg.string() + " --out " + out.string());
    CHECK(rc == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("value,cert_norm,duality_gap,oracle") != std::string::npos);
    CHECK(csv.find("\n1,") != std::string::npos);  // value column = 1
}

TEST_CASE("dist of a member measure is zero") {
    TempDir dir;
    const fs::path cfg = dir.path / "zero.cfg";
    const fs::path out = dir.path / "zero.csv";
    write(cfg,
          "[ground]\nkind = alphabet\nsize = 3\n"
          "[event]\nkind = explicit\nmembers = a:2,b:1\n"
          "[distance]\nkind = poisson_pi\n"
          "[input]\nxi = a:2,b:1\n");
    CHECK(run("dist " + cfg.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out).find("\n0,") != std::string::npos);
}

TEST_CASE("infeasible binomial parameter exits with a config error") {
    TempDir dir;
    const fs::path cfg = dir.path / "bad.cfg";
    write(cfg,
          "[ground]\nkind = alphabet\nsize = 3\n"
          "[process]\nkind = binomial\nn = 3\nt = 0.5\n"
          "[event]\nkind = count_lower\nregion = c\nk = 4\n"
          "[distance]\nkind = binomial\n"
          "[input]\nxi = a:1\n");
    CHECK(run("dist " + cfg.string()) == 2);
}

TEST_CASE("malformed config exits 2") {
    TempDir dir;
    const fs::path cfg = dir.path / "broken.cfg";
    write(cfg, "[ground]\nkind = alphabet\nsize = 3\nnope = 1\n");
    CHECK(run("ldi " + cfg.string()) == 2);
    CHECK(run("ldi " + (dir.path / "missing.cfg").string()) == 2);
}

TEST_CASE("small ldi run exits clean with one trial") {
    TempDir dir;
    const fs::path cfg = dir.path / "ldi.cfg";
    const fs::path out = dir.path / "ldi.csv";
    write(cfg,
          "[ground]\nkind = alphabet\nsize = 10\n"
          "[process]\nkind = binomial\nn = 12\nt = 0.5\n"
          "[event]\nkind = count_upper\nregion = a,b,c,d\nk = 3\n"
          "[distance]\nkind = binomial\n"
          "[experiment]\ns_grid = 0.5,2\ntrials = 1\nseed = 5\n");
    CHECK(run("ldi " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("s,p_A,p_A_hi,p_notAs,p_notAs_hi,product_hi,bound,violated") !=
          std::string::npos);
}

TEST_CASE("ldi output is byte-identical across reruns and thread counts") {
    TempDir dir;
    const fs::path cfg = dir.path / "det.cfg";
    write(cfg,
          "[ground]\nkind = alphabet\nsize = 10\n"
          "[process]\nkind = binomial\nn = 15\nt = 0.5\n"
          "[event]\nkind = count_upper\nregion = a,b,c,d\nk = 3\n"
          "[distance]\nkind = binomial\n"
          "[experiment]\ns_grid = 0.5,1,2\ntrials = 400\nseed = 11\n");
    const fs::path out1 = dir.path / "r1.csv";
    const fs::path out2 = dir.path / "r2.csv";
    const fs::path out3 = dir.path / "r3.csv";
    CHECK(run("ldi " + cfg.string() + " --out " + out1.string()) == 0);
    CHECK(run("ldi " + cfg.string() + " --out " + out2.string()) == 0);
    CHECK(run("ldi " + cfg.string() + " --threads 1 --serial --out " +
              out3.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1) == slurp(out3));
}

TEST_CASE("converge command") {
    TempDir dir;
    const fs::path cfg = dir.path / "conv.cfg";
    const fs::path out = dir.path / "conv.csv";
    write(cfg,
          "[ground]\nkind = alphabet\nsize = 4\n"
          "[event]\nkind = count_lower\nregion = a\nk = 2\n"
          "[input]\nxi = c:2,d:2\n"
          "[converge]\nn_grid = 20,80\n");
    CHECK(run("converge " + cfg.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out).find("n,d_pi,d_n,gap,bound") != std::string::npos);

    const fs::path bad = dir.path / "convbad.cfg";
    write(bad,
          "[ground]\nkind = alphabet\nsize = 4\n"
          "[event]\nkind = count_lower\nregion = a\nk = 2\n"
          "[input]\nxi = c:2,d:2\n"
          "[converge]\nn_grid = 3\n");  // n <= xi(E)
    CHECK(run("converge " + bad.string()) == 2);
}
