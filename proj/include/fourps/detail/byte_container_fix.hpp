#pragma once

// Preempts <boost/multiprecision/traits/is_byte_container.hpp> (Boost 1.74)
// with a SFINAE-friendly version. The stock trait dereferences
// std::iterator_traits<C::const_iterator>::value_type in a non-immediate
// context, which is a hard error for types whose const_iterator is void --
// Eigen's two-dimensional matrices among them -- as soon as overload
// resolution probes convertibility to a multiprecision number. Including this
// header before any boost/multiprecision header replaces the trait via its
// include guard; nothing else in the library is touched. Fixed upstream in
// later Boost releases.

#ifndef BOOST_IS_BYTE_CONTAINER_HPP
#define BOOST_IS_BYTE_CONTAINER_HPP

#include <iterator>
#include <type_traits>
#include <boost/mpl/has_xxx.hpp>
#include <boost/type_traits/integral_constant.hpp>

namespace boost { namespace multiprecision { namespace detail {

BOOST_MPL_HAS_XXX_TRAIT_NAMED_DEF(has_member_const_iterator, const_iterator, false)

template <class Iter, class = void>
struct byte_iterator_check : public boost::false_type
{};

template <class Iter>
struct byte_iterator_check<Iter, std::void_t<typename std::iterator_traits<Iter>::value_type>>
{
   typedef typename std::remove_cv<typename std::iterator_traits<Iter>::value_type>::type container_value_type;
   static const bool value = std::is_integral<container_value_type>::value && (sizeof(container_value_type) == 1);
};

template <class C, bool b>
struct is_byte_container_imp : public byte_iterator_check<typename C::const_iterator>
{};

template <class C>
struct is_byte_container_imp<C, false> : public boost::false_type
{};

template <class C>
struct is_byte_container : public boost::integral_constant<bool, is_byte_container_imp<C, has_member_const_iterator<C>::value>::value>
{};

}}} // namespace boost::multiprecision::detail

#endif // BOOST_IS_BYTE_CONTAINER_HPP
