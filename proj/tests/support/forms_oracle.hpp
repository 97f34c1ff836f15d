#ifndef BCLAB_TESTS_SUPPORT_FORMS_ORACLE_HPP
#define BCLAB_TESTS_SUPPORT_FORMS_ORACLE_HPP

#include <vector>

namespace formsoracle {

/* Narrow class group of the quadratic field of fundamental discriminant D,
   computed independently through integral binary quadratic forms: reduced
   form enumeration, cycle partition under the reduction operator for D > 0,
   and Dirichlet composition. Plain 64-bit arithmetic; |D| must stay small. */
struct FormsGroup {
    long h = 1;
    std::vector<long> element_orders;  // sorted multiset of class orders, size h
};

FormsGroup forms_class_group(long D);

/* Fundamental discriminants with |D| <= bound (negative and positive). */
std::vector<long> fundamental_discriminants(long bound);

}  // namespace formsoracle

#endif
