/**
 * \brief Discount calculation
 */

public class ApplyDiscount {
    /**
     * \brief Applies a discount to a price
     * \param price The original price
     * \param discount The amount taken off
     * \return The new price and whether it is affordable
     */
    public static Object[] applyDiscount(int price, int discount) throws Exception {
        Boolean isAffordable;

        price = price - discount;
        isAffordable = price < 20;

        Object[] outputs = new Object[2];
        outputs[0] = price;
        outputs[1] = isAffordable;
        return outputs;
    }

    public static void main(String[] args) throws Exception {
        int price = 25;
        int discount = 10;
        Boolean isAffordable;

        Object[] outputs = applyDiscount(price, discount);
        price = (int)(outputs[0]);
        isAffordable = (Boolean)(outputs[1]);
        System.out.println(price);
        System.out.println(isAffordable);
    }
}
