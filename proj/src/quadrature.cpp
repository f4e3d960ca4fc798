#include "pairwave/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace pairwave {

namespace {

constexpr std::size_t kRulePoints = 21;

struct Counted {
  const std::function<double(double)>* f;
  std::size_t calls = 0;
};

double trampoline(double x, void* params) {
  auto* c = static_cast<Counted*>(params);
  ++c->calls;
  return (*c->f)(x);
}

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           std::size_t budget) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw std::invalid_argument("integration bounds must be finite with a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integration tolerance must be positive");
  if (budget < kRulePoints) throw std::invalid_argument("evaluation budget below one panel");
  disable_gsl_abort();

  const std::size_t panels = budget / kRulePoints;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(panels));
  if (!ws) throw std::bad_alloc();

  Counted counted{&f};
  gsl_function g{&trampoline, &counted};
  QuadratureResult r;
  const int status = gsl_integration_qag(&g, a, b, tol, 0.0, panels, GSL_INTEG_GAUSS21, ws.get(),
                                         &r.value, &r.error_estimate);
  r.evaluations = counted.calls;
  r.converged = std::isfinite(r.value) &&
                (status == GSL_SUCCESS || (status != GSL_EMAXITER && r.error_estimate <= tol));
  return r;
}

ComplexQuadratureResult integrate_complex(const std::function<ComplexAmp(double)>& f, double a,
                                          double b, double tol, std::size_t budget) {
  const auto re = integrate([&](double x) { return f(x).real(); }, a, b, 0.5 * tol, budget / 2);
  const auto im = integrate([&](double x) { return f(x).imag(); }, a, b, 0.5 * tol, budget / 2);
  return {ComplexAmp(re.value, im.value), re.error_estimate + im.error_estimate,
          re.evaluations + im.evaluations, re.converged && im.converged};
}

const QuadratureResult& require_converged(const QuadratureResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << ": quadrature did not converge (achieved error " << r.error_estimate
        << " after " << r.evaluations << " evaluations)";
    throw NumericalError(msg.str());
  }
  return r;
}

}  // namespace pairwave
