#include "fibretool/fibretool.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "cxhyp.hpp"
#include "fibration.hpp"
#include "fibre.hpp"
#include "groups.hpp"
#include "invariants.hpp"
#include "seedgen.hpp"
#include "shell.hpp"

struct ft_rep {
  fibretool::Representation rep;
  std::string metadata;
};

struct ft_rep3 {
  fibretool::Rep3 rep;
  std::string metadata;
};

namespace {

thread_local std::string g_lastError;

ft_status mapCode(fibretool::Err code) {
  using fibretool::Err;
  switch (code) {
  case Err::InvalidMatrix:
  case Err::InvalidPoint:
  case Err::InvalidInput:
    return FT_ERR_INVALID_ARGUMENT;
  case Err::DomainError:
  case Err::DegenerateIntersection:
  case Err::PointNotOnAxis:
  case Err::NotInV:
  case Err::NotInMaximalComponent:
  case Err::NotHyperellipticInvolution:
  case Err::NotSameEquidistant:
  case Err::NotAFibrePair:
  case Err::MismatchedBase:
  case Err::NotAPointTriple:
  case Err::OutOfRange:
    return FT_ERR_DOMAIN;
  case Err::ParseError:
    return FT_ERR_PARSE;
  case Err::IoError:
    return FT_ERR_IO;
  case Err::InternalError:
    return FT_ERR_INTERNAL;
  }
  return FT_ERR_INTERNAL;
}

template <typename F>
ft_status guarded(F&& body) {
  g_lastError.clear();
  try {
    return body();
  } catch (const fibretool::FtError& e) {
    g_lastError = e.what();
    return mapCode(e.code());
  } catch (const std::exception& e) {
    g_lastError = e.what();
    return FT_ERR_INTERNAL;
  } catch (...) {
    g_lastError = "unidentified failure";
    return FT_ERR_INTERNAL;
  }
}

ft_status invalid(const char* message) {
  g_lastError = message;
  return FT_ERR_INVALID_ARGUMENT;
}

char* copyString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

extern "C" {

const char* ft_version(void) { return "1.0.0"; }

const char* ft_last_error(void) { return g_lastError.c_str(); }

void ft_string_free(char* s) { delete[] s; }

ft_status ft_rep_load(const char* path, ft_rep** out) {
  if (path == nullptr || out == nullptr) {
    return invalid("ft_rep_load: path and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    fibretool::RepFile file = fibretool::loadRepFile(path);
    *out = new ft_rep{std::move(file.rep), std::move(file.metadata)};
    return FT_OK;
  });
}

ft_status ft_rep_save(const ft_rep* rep, const char* path) {
  if (rep == nullptr || path == nullptr) {
    return invalid("ft_rep_save: rep and path must be non-NULL");
  }
  return guarded([&]() {
    fibretool::saveRepFile(fibretool::RepFile{rep->rep, rep->metadata}, path);
    return FT_OK;
  });
}

void ft_rep_free(ft_rep* rep) { delete rep; }

ft_status ft_rep_info(const ft_rep* rep, char* kind_out, int* n_out) {
  if (rep == nullptr) {
    return invalid("ft_rep_info: rep must be non-NULL");
  }
  if (kind_out != nullptr) {
    *kind_out = rep->rep.pres.kind == fibretool::Kind::H ? 'H' : 'G';
  }
  if (n_out != nullptr) {
    *n_out = rep->rep.pres.n;
  }
  g_lastError.clear();
  return FT_OK;
}

ft_status ft_gen_hyperelliptic(int n, ft_rep** out) {
  if (out == nullptr) {
    return invalid("ft_gen_hyperelliptic: out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    *out = new ft_rep{fibretool::symmetricHyperelliptic(n), std::string()};
    return FT_OK;
  });
}

ft_status ft_g_from_r(const ft_rep* rep_h, ft_rep** out) {
  if (rep_h == nullptr || out == nullptr) {
    return invalid("ft_g_from_r: rep and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    *out = new ft_rep{fibretool::gFromR(rep_h->rep), std::string()};
    return FT_OK;
  });
}

ft_status ft_gen_deformed(int n, uint64_t seed, double magnitude, ft_rep** out) {
  if (out == nullptr) {
    return invalid("ft_gen_deformed: out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    fibretool::SeedSpec spec(n, seed, magnitude);
    fibretool::Representation rep = fibretool::deformedRep(spec);
    std::string metadata = std::string("{\"seed\": ") + std::to_string(seed) +
                           ", \"magnitude\": " + std::to_string(magnitude) + "}";
    *out = new ft_rep{std::move(rep), std::move(metadata)};
    return FT_OK;
  });
}

ft_status ft_rep_residual(const ft_rep* rep, double* out) {
  if (rep == nullptr || out == nullptr) {
    return invalid("ft_rep_residual: rep and out must be non-NULL");
  }
  return guarded([&]() {
    *out = fibretool::relationResidual(rep->rep);
    return FT_OK;
  });
}

ft_status ft_rep_area(const ft_rep* rep, double* out) {
  if (rep == nullptr || out == nullptr) {
    return invalid("ft_rep_area: rep and out must be non-NULL");
  }
  return guarded([&]() {
    *out = fibretool::repArea(rep->rep);
    return FT_OK;
  });
}

ft_status ft_rep_area_at(const ft_rep* rep, double x, double y, double* out) {
  if (rep == nullptr || out == nullptr) {
    return invalid("ft_rep_area_at: rep and out must be non-NULL");
  }
  return guarded([&]() {
    *out = fibretool::repArea(rep->rep, fibretool::InteriorPoint(x, y));
    return FT_OK;
  });
}

ft_status ft_pushforward(const ft_rep* rep_g, int which, ft_rep** out) {
  if (rep_g == nullptr || out == nullptr) {
    return invalid("ft_pushforward: rep and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    *out = new ft_rep{fibretool::pushforward(rep_g->rep, which), std::string()};
    return FT_OK;
  });
}

ft_status ft_reconstruct(const ft_rep* rep1, const ft_rep* rep2, ft_rep** out) {
  if (rep1 == nullptr || rep2 == nullptr || out == nullptr) {
    return invalid("ft_reconstruct: rep1, rep2 and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    *out = new ft_rep{fibretool::reconstruct(rep1->rep, rep2->rep), std::string()};
    return FT_OK;
  });
}

ft_status ft_roundtrip_deviation(const ft_rep* rep_g, double* out) {
  if (rep_g == nullptr || out == nullptr) {
    return invalid("ft_roundtrip_deviation: rep and out must be non-NULL");
  }
  return guarded([&]() {
    *out = fibretool::roundtripDeviation(rep_g->rep);
    return FT_OK;
  });
}

ft_status ft_deform(const ft_rep* rep_g, const double* lambda, int count, ft_rep** out) {
  if (rep_g == nullptr || out == nullptr || (lambda == nullptr && count != 0)) {
    return invalid("ft_deform: rep, out, and lambda (when count > 0) must be non-NULL");
  }
  if (count < 0) {
    return invalid("ft_deform: count must be nonnegative");
  }
  *out = nullptr;
  return guarded([&]() {
    std::vector<double> coords(lambda, lambda + count);
    fibretool::Representation rep1 = fibretool::pushforward(rep_g->rep, 1);
    *out = new ft_rep{fibretool::fibrePoint(rep1, coords), std::string()};
    return FT_OK;
  });
}

ft_status ft_rep_fibre_coords(const ft_rep* rep_g, double* out, int cap, int* count_out) {
  if (rep_g == nullptr || out == nullptr || count_out == nullptr) {
    return invalid("ft_rep_fibre_coords: rep, out and count_out must be non-NULL");
  }
  return guarded([&]() {
    fibretool::TSData ts = fibretool::tsDecompose(rep_g->rep);
    fibretool::UVTables uv = fibretool::uvTables(ts);
    fibretool::FibreCoordinates coords = fibretool::fParams(ts, uv);
    int need = static_cast<int>(coords.phi.size());
    if (cap < need) {
      fibretool::fail(fibretool::Err::InvalidInput,
                      "ft_rep_fibre_coords: need capacity " + std::to_string(need));
    }
    for (int i = 0; i < need; ++i) {
      out[i] = coords.phi[static_cast<size_t>(i)];
    }
    *count_out = need;
    return FT_OK;
  });
}

ft_status ft_embed(const ft_rep* rep, ft_rep3** out) {
  if (rep == nullptr || out == nullptr) {
    return invalid("ft_embed: rep and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    *out = new ft_rep3{fibretool::embedFuchsian(rep->rep), rep->metadata};
    return FT_OK;
  });
}

ft_status ft_rep3_load(const char* path, ft_rep3** out) {
  if (path == nullptr || out == nullptr) {
    return invalid("ft_rep3_load: path and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&]() {
    fibretool::Rep3File file = fibretool::loadRep3File(path);
    *out = new ft_rep3{std::move(file.rep), std::move(file.metadata)};
    return FT_OK;
  });
}

ft_status ft_rep3_save(const ft_rep3* rep, const char* path) {
  if (rep == nullptr || path == nullptr) {
    return invalid("ft_rep3_save: rep and path must be non-NULL");
  }
  return guarded([&]() {
    fibretool::saveRep3File(fibretool::Rep3File{rep->rep, rep->metadata}, path);
    return FT_OK;
  });
}

void ft_rep3_free(ft_rep3* rep) { delete rep; }

ft_status ft_toledo(const ft_rep3* rep, double* out) {
  if (rep == nullptr || out == nullptr) {
    return invalid("ft_toledo: rep and out must be non-NULL");
  }
  return guarded([&]() {
    *out = fibretool::toledoInvariant(rep->rep);
    return FT_OK;
  });
}

ft_status ft_verify_report(const ft_rep* rep, double tolerance, char** report_out,
                           int* pass_out) {
  if (rep == nullptr || report_out == nullptr || pass_out == nullptr) {
    return invalid("ft_verify_report: rep, report_out and pass_out must be non-NULL");
  }
  *report_out = nullptr;
  return guarded([&]() {
    fibretool::VerifyOutcome outcome = fibretool::verifyRep(rep->rep, tolerance);
    *report_out = copyString(outcome.report);
    *pass_out = outcome.pass ? 1 : 0;
    return FT_OK;
  });
}

ft_status ft_verify_sweep(const ft_rep* rep, int count, double tolerance, char** report_out,
                          int* pass_out) {
  if (rep == nullptr || report_out == nullptr || pass_out == nullptr) {
    return invalid("ft_verify_sweep: rep, report_out and pass_out must be non-NULL");
  }
  *report_out = nullptr;
  return guarded([&]() {
    fibretool::VerifyOutcome outcome = fibretool::verifySweep(rep->rep, count, tolerance);
    *report_out = copyString(outcome.report);
    *pass_out = outcome.pass ? 1 : 0;
    return FT_OK;
  });
}

ft_status ft_plot_svg(const ft_rep* rep, char** svg_out) {
  if (rep == nullptr || svg_out == nullptr) {
    return invalid("ft_plot_svg: rep and svg_out must be non-NULL");
  }
  *svg_out = nullptr;
  return guarded([&]() {
    *svg_out = copyString(fibretool::plotSvg(rep->rep));
    return FT_OK;
  });
}

} // extern "C"
