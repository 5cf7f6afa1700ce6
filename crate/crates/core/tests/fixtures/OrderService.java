package com.example.orders;

import java.util.List;
import org.apache.logging.log4j.LogManager;
import org.apache.logging.log4j.Logger;

/**
 * Handles order placement. Braces in docs { } are not code.
 */
public class OrderService {
    private static final Logger LOG = LogManager.getLogger(OrderService.class);

    public Order place(Customer customer, List<Item> items) throws OrderException {
        if (items.isEmpty()) {
            LOG.warn("empty order for {}", customer.getId());
            throw new OrderException("no items");
        }
        Order order = new Order(customer);
        for (Item item : items) {
            order.add(item);
        }
        try {
            repository.save(order);
            LOG.info("order {} saved", order.getId());
        } catch (PersistenceException e) {
            LOG.error("could not save order " + order.getId(), e);
            throw new OrderException(e);
        }
        return order;
    }

    @Override
    public String toString() {
        return "OrderService{" + "repository=" + repository + '}';
    }
}
