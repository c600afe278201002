// Command-line front end. Links against the C API only.
//
// Exit codes: 0 = success / checks passed; 1 = checks failed or the
// computation rejected the input (numbers and messages printed); 2 = usage,
// parse, or I/O error.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fibretool/fibretool.h"

namespace {

struct RepPtr {
  ft_rep* p = nullptr;
  ~RepPtr() { ft_rep_free(p); }
  RepPtr() = default;
  RepPtr(const RepPtr&) = delete;
  RepPtr& operator=(const RepPtr&) = delete;
};

struct Rep3Ptr {
  ft_rep3* p = nullptr;
  ~Rep3Ptr() { ft_rep3_free(p); }
  Rep3Ptr() = default;
  Rep3Ptr(const Rep3Ptr&) = delete;
  Rep3Ptr& operator=(const Rep3Ptr&) = delete;
};

struct StrPtr {
  char* p = nullptr;
  ~StrPtr() { ft_string_free(p); }
  StrPtr() = default;
  StrPtr(const StrPtr&) = delete;
  StrPtr& operator=(const StrPtr&) = delete;
};

// Usage-class statuses exit 2; computation-level failures exit 1.
int exitFor(ft_status st) {
  std::fprintf(stderr, "error: %s\n", ft_last_error());
  if (st == FT_ERR_PARSE || st == FT_ERR_IO || st == FT_ERR_INVALID_ARGUMENT) {
    return 2;
  }
  return 1;
}

int runGen(int n, const std::string& kind, bool haveSeed, std::uint64_t seed, double magnitude,
           const std::string& outPath) {
  RepPtr rep;
  if (kind == "H") {
    ft_status st = ft_gen_hyperelliptic(n, &rep.p);
    if (st != FT_OK) {
      return exitFor(st);
    }
  } else if (haveSeed) {
    ft_status st = ft_gen_deformed(n, seed, magnitude, &rep.p);
    if (st != FT_OK) {
      return exitFor(st);
    }
  } else {
    RepPtr seedRep;
    ft_status st = ft_gen_hyperelliptic(n, &seedRep.p);
    if (st != FT_OK) {
      return exitFor(st);
    }
    st = ft_g_from_r(seedRep.p, &rep.p);
    if (st != FT_OK) {
      return exitFor(st);
    }
  }
  ft_status st = ft_rep_save(rep.p, outPath.c_str());
  if (st != FT_OK) {
    return exitFor(st);
  }
  double residual = 0.0;
  if (ft_rep_residual(rep.p, &residual) == FT_OK) {
    std::printf("wrote %s (residual %.3e)\n", outPath.c_str(), residual);
  } else {
    std::printf("wrote %s\n", outPath.c_str());
  }
  return 0;
}

int runVerify(const std::string& path, int sweep, double tolerance) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  StrPtr report;
  int pass = 0;
  if (sweep > 0) {
    st = ft_verify_sweep(rep.p, sweep, tolerance, &report.p, &pass);
  } else {
    st = ft_verify_report(rep.p, tolerance, &report.p, &pass);
  }
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::fputs(report.p, stdout);
  return pass ? 0 : 1;
}

int runFiber(const std::string& path, int which, const std::string& outPath) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  RepPtr image;
  st = ft_pushforward(rep.p, which, &image.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  st = ft_rep_save(image.p, outPath.c_str());
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

int runRecon(const std::string& path1, const std::string& path2, const std::string& outPath) {
  RepPtr rep1;
  ft_status st = ft_rep_load(path1.c_str(), &rep1.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  RepPtr rep2;
  st = ft_rep_load(path2.c_str(), &rep2.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  RepPtr out;
  st = ft_reconstruct(rep1.p, rep2.p, &out.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  st = ft_rep_save(out.p, outPath.c_str());
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

int runRoundtrip(const std::string& path, double tolerance) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  double dev = 0.0;
  st = ft_roundtrip_deviation(rep.p, &dev);
  if (st != FT_OK) {
    return exitFor(st);
  }
  bool pass = dev < tolerance;
  std::printf("max deviation %.3e (tolerance %.3e) %s\n", dev, tolerance,
              pass ? "pass" : "FAIL");
  return pass ? 0 : 1;
}

int runDeform(const std::string& path, const std::vector<double>& lambda,
              const std::string& outPath) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  RepPtr out;
  st = ft_deform(rep.p, lambda.data(), static_cast<int>(lambda.size()), &out.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  st = ft_rep_save(out.p, outPath.c_str());
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

int runEmbed(const std::string& path, const std::string& outPath) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  Rep3Ptr embedded;
  st = ft_embed(rep.p, &embedded.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  st = ft_rep3_save(embedded.p, outPath.c_str());
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

int runToledo(const std::string& path) {
  Rep3Ptr rep;
  ft_status st = ft_rep3_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  double value = 0.0;
  st = ft_toledo(rep.p, &value);
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::printf("toledo %.9f\n", value);
  return 0;
}

int runPlot(const std::string& path, const std::string& outPath) {
  RepPtr rep;
  ft_status st = ft_rep_load(path.c_str(), &rep.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  StrPtr svg;
  st = ft_plot_svg(rep.p, &svg.p);
  if (st != FT_OK) {
    return exitFor(st);
  }
  std::ofstream out(outPath, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "error: cannot open for writing: %s\n", outPath.c_str());
    return 2;
  }
  out << svg.p;
  out.flush();
  if (!out.good()) {
    std::fprintf(stderr, "error: write failure: %s\n", outPath.c_str());
    return 2;
  }
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("fibretool ") + ft_version() +
               " - maximal representations, fibre deformations, and area invariants"};
  app.require_subcommand(1);

  int genN = 0;
  std::string genKind = "H";
  std::uint64_t genSeed = 0;
  double genMagnitude = 1.0;
  std::string genOut;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seed representation");
  gen->add_option("--n", genN, "Number of generators of the odd family (even, >= 6)")
      ->required();
  gen->add_option("--kind", genKind, "Family: H (odd, default) or G (even)")
      ->check(CLI::IsMember({"H", "G"}));
  CLI::Option* genSeedOpt =
      gen->add_option("--seed", genSeed, "Deformation seed (kind G only)");
  CLI::Option* genMagOpt = gen->add_option(
      "--magnitude", genMagnitude, "Deformation magnitude (default 1; kind G with --seed only)");
  gen->add_option("-o,--output", genOut, "Output file")->required();

  std::string verifyPath;
  int verifySweepCount = 0;
  double verifyTolerance = 1e-6;
  CLI::App* verify = app.add_subcommand("verify", "Run named checks on a representation file");
  verify->add_option("file", verifyPath, "Representation file")->required();
  verify->add_option("--sweep", verifySweepCount,
                     "Verify this many seeded fibre deformations instead (kind G)");
  verify->add_option("--tolerance", verifyTolerance, "Check threshold (default 1e-6)");

  std::string fiberPath;
  int fiberWhich = 0;
  std::string fiberOut;
  CLI::App* fiber = app.add_subcommand("fiber", "Hyperelliptic pushforward of an even-family rep");
  fiber->add_option("file", fiberPath, "Representation file (kind G)")->required();
  fiber->add_option("--which", fiberWhich, "Pushforward index: 1 or 2")->required();
  fiber->add_option("-o,--output", fiberOut, "Output file")->required();

  std::string reconPath1;
  std::string reconPath2;
  std::string reconOut;
  CLI::App* recon = app.add_subcommand("recon", "Reconstruct from a pushforward pair");
  recon->add_option("file1", reconPath1, "First pushforward image")->required();
  recon->add_option("file2", reconPath2, "Second pushforward image")->required();
  recon->add_option("-o,--output", reconOut, "Output file")->required();

  std::string roundtripPath;
  double roundtripTolerance = 1e-6;
  CLI::App* roundtrip =
      app.add_subcommand("roundtrip", "Push forward, reconstruct, and compare (kind G)");
  roundtrip->add_option("file", roundtripPath, "Representation file (kind G)")->required();
  roundtrip->add_option("--tolerance", roundtripTolerance, "Pass threshold (default 1e-6)");

  std::string deformPath;
  std::vector<double> deformLambda;
  std::string deformOut;
  CLI::App* deform = app.add_subcommand("deform", "Move along the fibre chart (kind G)");
  deform->add_option("file", deformPath, "Representation file (kind G)")->required();
  CLI::Option* deformLambdaOpt =
      deform->add_option("--lambda", deformLambda, "Chart coordinates, comma-separated (n-6 values)")
          ->delimiter(',');
  deform->add_option("-o,--output", deformOut, "Output file")->required();

  std::string embedPath;
  std::string embedOut;
  CLI::App* embed = app.add_subcommand("embed", "Embed along the standard complex geodesic");
  embed->add_option("file", embedPath, "Representation file")->required();
  embed->add_option("-o,--output", embedOut, "Output file (3x3 format)")->required();

  std::string toledoPath;
  CLI::App* toledo = app.add_subcommand("toledo", "Area invariant of an embedded representation");
  toledo->add_option("file", toledoPath, "Representation file (3x3 format)")->required();

  std::string plotPath;
  std::string plotOut;
  CLI::App* plot = app.add_subcommand("plot", "Disc-model SVG figure");
  plot->add_option("file", plotPath, "Representation file")->required();
  plot->add_option("-o,--output", plotOut, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    bool haveSeed = genSeedOpt->count() > 0;
    bool haveMagnitude = genMagOpt->count() > 0;
    if (genKind == "H" && (haveSeed || haveMagnitude)) {
      std::fprintf(stderr, "error: --seed/--magnitude apply to --kind G only\n");
      return 2;
    }
    if (haveMagnitude && !haveSeed) {
      std::fprintf(stderr, "error: --magnitude requires --seed\n");
      return 2;
    }
    return runGen(genN, genKind, haveSeed, genSeed, genMagnitude, genOut);
  }
  if (verify->parsed()) {
    if (verifySweepCount < 0) {
      std::fprintf(stderr, "error: --sweep must be positive\n");
      return 2;
    }
    return runVerify(verifyPath, verifySweepCount, verifyTolerance);
  }
  if (fiber->parsed()) {
    return runFiber(fiberPath, fiberWhich, fiberOut);
  }
  if (recon->parsed()) {
    return runRecon(reconPath1, reconPath2, reconOut);
  }
  if (roundtrip->parsed()) {
    return runRoundtrip(roundtripPath, roundtripTolerance);
  }
  if (deform->parsed()) {
    if (deformLambdaOpt->count() == 0) {
      deformLambda.clear();
    }
    return runDeform(deformPath, deformLambda, deformOut);
  }
  if (embed->parsed()) {
    return runEmbed(embedPath, embedOut);
  }
  if (toledo->parsed()) {
    return runToledo(toledoPath);
  }
  if (plot->parsed()) {
    return runPlot(plotPath, plotOut);
  }
  std::fprintf(stderr, "error: no subcommand\n");
  return 2;
}
