#ifndef FLOWEST_REPORT_UTIL_HPP_
#define FLOWEST_REPORT_UTIL_HPP_

#include "flowest/optim.hpp"

namespace flowest::detail
{

inline EstimateReport report_from(const optim::OptResult& res, const char* method)
{
    EstimateReport rep;
    rep.method = method;
    rep.params = res.params.normalized();
    rep.cost = res.cost;
    rep.converged = res.converged;
    rep.iterations = res.iterations;
    rep.start_point = res.start_point;
    rep.starts = res.starts;
    rep.direction_indeterminate = rep.params.w < 1e-9 * rep.params.v;
    return rep;
}

} // namespace flowest::detail

#endif
